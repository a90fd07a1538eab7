import { describe, expect, it } from "vitest";

import {
  FormatError,
  parseDecodeRecords,
  parseWaterfallCsv,
  quantize,
  readLlrFile,
  rint,
  unpackBits,
  WATERFALL_CSV_HEADER,
  writeLlrFile,
} from "../src/index.js";

describe("LLR container", () => {
  it("round-trips float32 blocks", () => {
    const vals = new Float32Array([1.5, -2.25, 8, 0, -0.5, 3]);
    const buf = writeLlrFile(vals, 3);
    expect(buf.length).toBe(16 + 6 * 4);
    expect(buf.subarray(0, 4).toString("ascii")).toBe("LLR0");
    expect(buf.readUInt32LE(4)).toBe(3);
    expect(buf.readUInt32LE(8)).toBe(2);
    expect(buf.readUInt8(12)).toBe(0);
    const back = readLlrFile(buf);
    expect(back.arithmetic).toBe("float32");
    expect(back.n).toBe(3);
    expect(Array.from(back.values)).toEqual(Array.from(vals));
  });

  it("round-trips fixed16 blocks", () => {
    const vals = new Int16Array([1023, -1023, 0, 511]);
    const buf = writeLlrFile(vals, 4);
    expect(buf.readUInt8(12)).toBe(1);
    const back = readLlrFile(buf);
    expect(back.arithmetic).toBe("fixed16");
    expect(Array.from(back.values)).toEqual(Array.from(vals));
  });

  it("rejects malformed containers", () => {
    expect(() => writeLlrFile(new Float32Array(5), 3)).toThrow(FormatError);
    const good = writeLlrFile(new Float32Array(4), 4);
    const badMagic = Buffer.from(good);
    badMagic.write("NOPE", 0, "ascii");
    expect(() => readLlrFile(badMagic)).toThrow(FormatError);
    expect(() => readLlrFile(good.subarray(0, 10))).toThrow(FormatError);
    expect(() => readLlrFile(good.subarray(0, good.length - 2))).toThrow(
      FormatError,
    );
    const badCode = Buffer.from(good);
    badCode.writeUInt8(9, 12);
    expect(() => readLlrFile(badCode)).toThrow(FormatError);
  });
});

describe("bit unpacking and decode records", () => {
  it("unpacks MSB-first", () => {
    expect(Array.from(unpackBits(Uint8Array.of(0x80), 8))).toEqual([
      1, 0, 0, 0, 0, 0, 0, 0,
    ]);
    expect(Array.from(unpackBits(Uint8Array.of(0b10110001), 8))).toEqual([
      1, 0, 1, 1, 0, 0, 0, 1,
    ]);
  });

  it("splits records into bits, iterations and flag", () => {
    // two records of N=16: 2 packed bytes + iteration byte + converged byte
    const buf = Buffer.from([0xff, 0x00, 3, 1, 0x0f, 0xf0, 9, 0]);
    const recs = parseDecodeRecords(buf, 16, 6);
    expect(recs).toHaveLength(2);
    expect(Array.from(recs[0].hardBits.subarray(0, 8))).toEqual([
      1, 1, 1, 1, 1, 1, 1, 1,
    ]);
    expect(recs[0].iterations).toBe(3);
    expect(recs[0].converged).toBe(true);
    expect(recs[0].infoBits).toHaveLength(6);
    expect(recs[1].iterations).toBe(9);
    expect(recs[1].converged).toBe(false);
    expect(() => parseDecodeRecords(buf.subarray(1), 16, 6)).toThrow(
      FormatError,
    );
  });
});

describe("quantizer", () => {
  it("rounds half to even", () => {
    expect(rint(0.5)).toBe(0);
    expect(rint(1.5)).toBe(2);
    expect(rint(2.5)).toBe(2);
    expect(rint(-0.5)).toBe(0);
    expect(rint(-1.5)).toBe(-2);
    expect(rint(1.25)).toBe(1);
  });

  it("maps the clip range onto +/-(2^qB - 1)", () => {
    const q = quantize([0, 24, -24, 100, -100, 12, -12]);
    expect(Array.from(q)).toEqual([0, 1023, -1023, 1023, -1023, 512, -512]);
    const q4 = quantize([24, 3.2, -24], 4);
    expect(Array.from(q4)).toEqual([15, 2, -15]);
    expect(() => quantize([0], 0)).toThrow(RangeError);
    expect(() => quantize([0], 15)).toThrow(RangeError);
  });
});

describe("waterfall CSV", () => {
  it("parses rows under the fixed header", () => {
    const text =
      WATERFALL_CSV_HEADER +
      "\n2,256,73728,190,30,0.00257704,0.117188,4.25\n";
    const pts = parseWaterfallCsv(text);
    expect(pts).toHaveLength(1);
    expect(pts[0].ebn0Db).toBe(2);
    expect(pts[0].frames).toBe(256);
    expect(pts[0].bitErrors).toBe(190);
    expect(pts[0].ber).toBeCloseTo(0.00257704, 8);
    expect(pts[0].avgIters).toBeCloseTo(4.25, 8);
  });

  it("rejects unknown headers and short rows", () => {
    expect(() => parseWaterfallCsv("a,b\n1,2\n")).toThrow(FormatError);
    expect(() =>
      parseWaterfallCsv(WATERFALL_CSV_HEADER + "\n1,2,3\n"),
    ).toThrow(FormatError);
  });
});
