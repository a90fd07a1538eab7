/** Readers and writers for the codec's on-disk formats. */

import { FormatError } from "./errors.js";

export type Arithmetic = "float32" | "fixed16";

const LLR_MAGIC = 0x4c4c5230; // "LLR0" big-endian read of the 4 magic bytes

/** 16-byte header (magic, uint32 N, uint32 count, uint8 arith, 3 pad) plus
 * little-endian payload. */
export function writeLlrFile(
  values: Float32Array | Int16Array,
  n: number,
): Buffer {
  if (n <= 0 || values.length % n !== 0) {
    throw new FormatError(`${values.length} values do not tile N=${n}`);
  }
  const fixed = values instanceof Int16Array;
  const itemBytes = fixed ? 2 : 4;
  const count = values.length / n;
  const buf = Buffer.alloc(16 + values.length * itemBytes);
  buf.write("LLR0", 0, "ascii");
  buf.writeUInt32LE(n, 4);
  buf.writeUInt32LE(count, 8);
  buf.writeUInt8(fixed ? 1 : 0, 12);
  const view = new DataView(buf.buffer, buf.byteOffset + 16);
  for (let i = 0; i < values.length; i++) {
    if (fixed) view.setInt16(i * 2, values[i], true);
    else view.setFloat32(i * 4, values[i], true);
  }
  return buf;
}

export interface LlrBlock {
  n: number;
  arithmetic: Arithmetic;
  values: Float32Array | Int16Array;
}

export function readLlrFile(buf: Buffer): LlrBlock {
  if (buf.length < 16) throw new FormatError("truncated LLR header");
  if (buf.readUInt32BE(0) !== LLR_MAGIC) {
    throw new FormatError("bad LLR magic");
  }
  const n = buf.readUInt32LE(4);
  const count = buf.readUInt32LE(8);
  const code = buf.readUInt8(12);
  if (code !== 0 && code !== 1) {
    throw new FormatError(`unknown arithmetic code ${code}`);
  }
  const itemBytes = code === 1 ? 2 : 4;
  if (buf.length !== 16 + n * count * itemBytes) {
    throw new FormatError("LLR payload size mismatch");
  }
  const view = new DataView(buf.buffer, buf.byteOffset + 16);
  const total = n * count;
  if (code === 1) {
    const out = new Int16Array(total);
    for (let i = 0; i < total; i++) out[i] = view.getInt16(i * 2, true);
    return { n, arithmetic: "fixed16", values: out };
  }
  const out = new Float32Array(total);
  for (let i = 0; i < total; i++) out[i] = view.getFloat32(i * 4, true);
  return { n, arithmetic: "float32", values: out };
}

/** MSB-first unpack: bit j of the block is bit (7 - j%8) of byte j/8. */
export function unpackBits(bytes: Uint8Array, n: number): Uint8Array {
  if (bytes.length * 8 < n) throw new FormatError("not enough packed bytes");
  const bits = new Uint8Array(n);
  for (let j = 0; j < n; j++) {
    bits[j] = (bytes[j >> 3] >> (7 - (j & 7))) & 1;
  }
  return bits;
}

export interface DecodeRecord {
  hardBits: Uint8Array;
  infoBits: Uint8Array;
  iterations: number;
  converged: boolean;
}

/** Per codeword: N/8 packed hard-decision bytes, iteration byte, flag byte. */
export function parseDecodeRecords(
  buf: Buffer,
  n: number,
  k: number,
): DecodeRecord[] {
  const recordBytes = n / 8 + 2;
  if (n % 8 !== 0 || buf.length % recordBytes !== 0) {
    throw new FormatError(
      `${buf.length} bytes is not a multiple of the ${recordBytes} B record`,
    );
  }
  const out: DecodeRecord[] = [];
  for (let off = 0; off < buf.length; off += recordBytes) {
    const hardBits = unpackBits(buf.subarray(off, off + n / 8), n);
    out.push({
      hardBits,
      infoBits: hardBits.subarray(0, k),
      iterations: buf[off + recordBytes - 2],
      converged: buf[off + recordBytes - 1] === 1,
    });
  }
  return out;
}

/** Round half to even, like the core's quantizer. */
export function rint(x: number): number {
  const floor = Math.floor(x);
  const frac = x - floor;
  if (frac > 0.5) return floor + 1;
  if (frac < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

/** Linear map onto +/-(2^qB - 1) with clipping, matching the core decoder's
 * expected fixed-point input scaling. */
export function quantize(
  values: ArrayLike<number>,
  qB = 10,
  lClip = 24.0,
): Int16Array {
  if (qB < 1 || qB > 14) throw new RangeError("qB must stay in [1, 14]");
  const lim = (1 << qB) - 1;
  const scale = lim / lClip;
  const out = new Int16Array(values.length);
  for (let i = 0; i < values.length; i++) {
    const v = rint(values[i] * scale);
    out[i] = Math.max(-lim, Math.min(lim, v));
  }
  return out;
}

export interface WaterfallPoint {
  ebn0Db: number;
  frames: number;
  bits: number;
  bitErrors: number;
  frameErrors: number;
  ber: number;
  fer: number;
  avgIters: number;
}

export const WATERFALL_CSV_HEADER =
  "ebn0_db,frames,bits,bit_errors,frame_errors,ber,fer,avg_iters";

export function parseWaterfallCsv(text: string): WaterfallPoint[] {
  const lines = text.trim().split("\n");
  if (lines[0] !== WATERFALL_CSV_HEADER) {
    throw new FormatError(`unexpected CSV header: ${lines[0]}`);
  }
  return lines.slice(1).map((line) => {
    const f = line.split(",").map(Number);
    if (f.length !== 8 || f.some(Number.isNaN)) {
      throw new FormatError(`bad CSV row: ${line}`);
    }
    return {
      ebn0Db: f[0],
      frames: f[1],
      bits: f[2],
      bitErrors: f[3],
      frameErrors: f[4],
      ber: f[5],
      fer: f[6],
      avgIters: f[7],
    };
  });
}
