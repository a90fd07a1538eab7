import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { FormatError, UsageError } from "./errors.js";
import {
  Arithmetic,
  DecodeRecord,
  parseDecodeRecords,
  parseWaterfallCsv,
  quantize,
  WaterfallPoint,
  writeLlrFile,
} from "./formats.js";
import { runCli, withTempDir } from "./run.js";

export type StandardName = "wifi" | "wimax";

export interface CodecOptions {
  /** Super-iteration cap for decode and simulate (default 10). */
  maxIterations?: number;
  /** Quantizer magnitude bits for fixed-point work (default 10). */
  qB?: number;
  /** Worker threads handed to the CLI (default 1). */
  workers?: number;
  /** Keep iterating after the syndrome clears (default false). */
  noEarlyTermination?: boolean;
}

/** Immutable handle for one embedded code plus decoder settings. */
export class Codec {
  readonly standard: StandardName;
  readonly rate: string;
  readonly n: number;
  readonly k: number;
  readonly z: number;
  readonly options: Required<CodecOptions>;

  /** @internal use {@link codec} which validates against the CLI */
  constructor(
    standard: StandardName,
    rate: string,
    n: number,
    k: number,
    z: number,
    options: Required<CodecOptions>,
  ) {
    this.standard = standard;
    this.rate = rate;
    this.n = n;
    this.k = k;
    this.z = z;
    this.options = options;
    Object.freeze(this.options);
    Object.freeze(this);
  }

  /** @internal flags shared by every subcommand */
  codeArgs(): string[] {
    return [
      "--std", this.standard,
      "--n", String(this.n),
      "--rate", this.rate,
    ];
  }

  /** @internal flags shared by decode and simulate */
  decoderArgs(): string[] {
    const args = [
      "--iters", String(this.options.maxIterations),
      "--qb", String(this.options.qB),
      "--workers", String(this.options.workers),
    ];
    if (this.options.noEarlyTermination) args.push("--no-early-term");
    return args;
  }
}

/**
 * Look the code up and return a handle with its dimensions. Unsupported
 * (standard, n, rate) triples throw UnsupportedCodeError.
 */
export function codec(
  standard: StandardName,
  n: number,
  rate: string,
  options: CodecOptions = {},
): Codec {
  const opts: Required<CodecOptions> = {
    maxIterations: options.maxIterations ?? 10,
    qB: options.qB ?? 10,
    workers: options.workers ?? 1,
    noEarlyTermination: options.noEarlyTermination ?? false,
  };
  const { stdout } = runCli([
    "matrix", "--std", standard, "--n", String(n), "--rate", rate,
  ]);
  // header line: standard rate z nb kb
  const head = stdout.split("\n")[0].trim().split(/\s+/);
  if (head.length !== 5) {
    throw new FormatError(`unexpected matrix header: ${head.join(" ")}`);
  }
  const [std, rateName, zStr, nbStr, kbStr] = head;
  const z = Number(zStr);
  const nBits = Number(nbStr) * z;
  const kBits = Number(kbStr) * z;
  if (!stdout.includes("structure: OK")) {
    throw new FormatError(`code failed its structure check:\n${stdout}`);
  }
  return new Codec(std as StandardName, rateName, nBits, kBits, z, opts);
}

/**
 * Encode one or more frames of K info bits (one bit per byte). Returns the
 * concatenated N-bit systematic codewords in the same layout.
 */
export function encode(handle: Codec, infoBits: Uint8Array): Uint8Array {
  if (infoBits.length === 0 || infoBits.length % handle.k !== 0) {
    throw new UsageError(
      `${infoBits.length} bits is not a multiple of K=${handle.k}`,
    );
  }
  return withTempDir((dir) => {
    const src = join(dir, "info.bits");
    const dst = join(dir, "cw.bits");
    writeFileSync(src, infoBits);
    runCli(["encode", ...handle.codeArgs(), "--in", src, "--out", dst]);
    return new Uint8Array(readFileSync(dst));
  });
}

/**
 * Decode one or more codewords' channel LLRs. Float32Array runs the float
 * decoder, Int16Array the fixed-point one; values must tile N.
 */
export function decode(
  handle: Codec,
  llrs: Float32Array | Int16Array,
): DecodeRecord[] {
  if (llrs.length === 0 || llrs.length % handle.n !== 0) {
    throw new UsageError(
      `${llrs.length} LLRs is not a multiple of N=${handle.n}`,
    );
  }
  const arith: Arithmetic = llrs instanceof Int16Array ? "fixed16" : "float32";
  return withTempDir((dir) => {
    const src = join(dir, "block.llr");
    const dst = join(dir, "out.rec");
    writeFileSync(src, writeLlrFile(llrs, handle.n));
    runCli([
      "decode", ...handle.codeArgs(), ...handle.decoderArgs(),
      "--arith", arith, "--in", src, "--out", dst,
    ]);
    return parseDecodeRecords(readFileSync(dst), handle.n, handle.k);
  });
}

export interface WaterfallOptions {
  minErrors?: number;
  maxFrames?: number;
  minFrames?: number;
  seed?: number;
  arithmetic?: Arithmetic;
}

export interface WaterfallTable {
  points: WaterfallPoint[];
  csv: string;
}

/** Express the list as the CLI's single-value or start:step:stop grid form,
 * or null when the spacing is not uniform. */
function snrFlag(snrsDb: number[]): string | null {
  if (snrsDb.length === 1) return String(snrsDb[0]);
  const step = snrsDb[1] - snrsDb[0];
  if (!(step > 0)) return null;
  for (let i = 0; i < snrsDb.length; i++) {
    if (Math.abs(snrsDb[i] - (snrsDb[0] + step * i)) > 1e-9) return null;
  }
  return `${snrsDb[0]}:${step}:${snrsDb[snrsDb.length - 1]}`;
}

/**
 * Monte-Carlo BER/FER sweep over the given Eb/N0 points, reproducible from
 * the seed regardless of worker count. A uniformly spaced list runs as one
 * CLI sweep (so its CSV is byte-identical to `simulate` with the same grid);
 * anything else runs point by point with the rows stitched together.
 */
export function waterfall(
  handle: Codec,
  snrsDb: number[],
  options: WaterfallOptions = {},
): WaterfallTable {
  if (snrsDb.length === 0) {
    return { points: [], csv: "" };
  }
  const common = [
    "simulate", ...handle.codeArgs(), ...handle.decoderArgs(),
    "--arith", options.arithmetic ?? "float32",
    "--min-errors", String(options.minErrors ?? 10000),
    "--max-frames", String(options.maxFrames ?? 1000000),
    "--min-frames", String(options.minFrames ?? 1),
    "--seed", String(options.seed ?? 0),
  ];
  return withTempDir((dir) => {
    const grid = snrFlag(snrsDb);
    if (grid !== null) {
      const dst = join(dir, "wf.csv");
      runCli([...common, "--snr", grid, "--out", dst]);
      const csv = readFileSync(dst, "utf8");
      return { points: parseWaterfallCsv(csv), csv };
    }
    const bodies = snrsDb.map((snr, i) => {
      const dst = join(dir, `p${i}.csv`);
      runCli([...common, "--snr", String(snr), "--out", dst]);
      return readFileSync(dst, "utf8").trim().split("\n");
    });
    const csv = [bodies[0][0], ...bodies.map((b) => b[1])].join("\n") + "\n";
    return { points: parseWaterfallCsv(csv), csv };
  });
}

export { quantize };
