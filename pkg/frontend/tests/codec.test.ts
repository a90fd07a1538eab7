import { describe, expect, it } from "vitest";

import {
  codec,
  decode,
  encode,
  quantize,
  UnsupportedCodeError,
  UsageError,
  waterfall,
} from "../src/index.js";
import { noisyLlrs, randomBits } from "./helpers.js";

describe("codec handles", () => {
  it("reports the dimensions of known codes", () => {
    const wifi = codec("wifi", 648, "1/2");
    expect(wifi.k).toBe(324);
    expect(wifi.n).toBe(648);
    expect(wifi.z).toBe(27);
    const wimax = codec("wimax", 2304, "5/6");
    expect(wimax.k).toBe(1920);
    expect(wimax.z).toBe(96);
    expect(wimax.rate).toBe("5/6");
  });

  it("rejects unsupported code selections", () => {
    expect(() => codec("wifi", 1000, "1/2")).toThrow(UnsupportedCodeError);
    expect(() => codec("wimax", 600, "1/2")).toThrow(UnsupportedCodeError);
    expect(() => codec("wifi", 648, "2/3B")).toThrow(UnsupportedCodeError);
  });

  it("freezes options with defaults filled in", () => {
    const h = codec("wimax", 576, "1/2", { maxIterations: 8 });
    expect(h.options).toEqual({
      maxIterations: 8,
      qB: 10,
      workers: 1,
      noEarlyTermination: false,
    });
    expect(Object.isFrozen(h)).toBe(true);
    expect(Object.isFrozen(h.options)).toBe(true);
  });
});

describe("encode/decode round trips", () => {
  it("validates input sizes", () => {
    const h = codec("wimax", 576, "1/2");
    expect(() => encode(h, new Uint8Array(100))).toThrow(UsageError);
    expect(() => encode(h, new Uint8Array(0))).toThrow(UsageError);
    expect(() => decode(h, new Float32Array(10))).toThrow(UsageError);
  });

  it("recovers info bits through a noiseless float pipeline", () => {
    const h = codec("wimax", 576, "1/2");
    const info = randomBits(2 * h.k, 11);
    const cw = encode(h, info);
    expect(cw).toHaveLength(2 * h.n);
    // systematic prefix per frame
    for (const f of [0, 1]) {
      expect(cw.subarray(f * h.n, f * h.n + h.k)).toEqual(
        info.subarray(f * h.k, (f + 1) * h.k),
      );
    }
    const llrs = new Float32Array(cw.length);
    for (let i = 0; i < cw.length; i++) llrs[i] = (1 - 2 * cw[i]) * 8;
    const recs = decode(h, llrs);
    expect(recs).toHaveLength(2);
    for (const [f, rec] of recs.entries()) {
      expect(rec.converged).toBe(true);
      expect(rec.iterations).toBe(1);
      expect(rec.hardBits).toEqual(cw.subarray(f * h.n, (f + 1) * h.n));
    }
  });

  it("decodes quantized LLRs with the fixed-point decoder", () => {
    const h = codec("wifi", 1296, "3/4A");
    const info = randomBits(h.k, 12);
    const cw = encode(h, info);
    const soft = new Float32Array(h.n);
    for (let i = 0; i < h.n; i++) soft[i] = (1 - 2 * cw[i]) * 6;
    const recs = decode(h, quantize(soft));
    expect(recs).toHaveLength(1);
    expect(recs[0].converged).toBe(true);
    expect(recs[0].infoBits).toEqual(info);
  });

  it("corrects noise at a comfortable operating point", () => {
    const h = codec("wimax", 576, "1/2");
    const info = randomBits(h.k, 13);
    const cw = encode(h, info);
    const recs = decode(h, noisyLlrs(cw, 4.0, 0.5, 14));
    expect(recs[0].converged).toBe(true);
    expect(recs[0].infoBits).toEqual(info);
    expect(recs[0].iterations).toBeGreaterThan(1);
  });
});

describe("waterfall", () => {
  it("returns an empty table for an empty grid without spawning", () => {
    const h = codec("wimax", 576, "1/2");
    expect(waterfall(h, [])).toEqual({ points: [], csv: "" });
  });

  it("sweeps a grid and exposes typed points", () => {
    const h = codec("wimax", 576, "1/2");
    const table = waterfall(h, [1.0, 2.0], {
      minErrors: 25,
      maxFrames: 512,
      seed: 1,
    });
    expect(table.points.map((p) => p.ebn0Db)).toEqual([1.0, 2.0]);
    for (const p of table.points) {
      expect(p.frames).toBeGreaterThan(0);
      expect(p.bits).toBe(p.frames * h.k);
      expect(p.ber).toBeCloseTo(p.bitErrors / p.bits, 6);
      expect(p.avgIters).toBeGreaterThan(1);
    }
    // more noise can only hurt: the 1.0 dB point has at least as many errors
    expect(table.points[0].ber).toBeGreaterThanOrEqual(table.points[1].ber);
  });
});
