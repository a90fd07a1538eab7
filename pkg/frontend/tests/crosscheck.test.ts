/**
 * Byte-level agreement between this package and direct CLI invocations on
 * shared inputs and seeds, over three codes; the reference side builds its
 * files with its own plumbing so the package's writers are independently
 * exercised.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { cliBinary, codec, decode, encode, waterfall } from "../src/index.js";
import { noisyLlrs, randomBits } from "./helpers.js";

const CODES: Array<["wifi" | "wimax", number, string, number]> = [
  ["wifi", 648, "1/2", 21],
  ["wimax", 576, "1/2", 22],
  ["wimax", 2304, "5/6", 23],
];

const scratch = mkdtempSync(join(tmpdir(), "qcldpc-ref-"));
afterAll(() => rmSync(scratch, { recursive: true, force: true }));

function cli(args: string[]): string {
  const proc = spawnSync(cliBinary(), args, { encoding: "utf8" });
  expect(proc.status, proc.stderr).toBe(0);
  return proc.stdout;
}

/** Reference-side LLR container, assembled by hand. */
function refLlrFile(values: Float32Array, n: number): Buffer {
  const head = Buffer.alloc(16);
  head.write("LLR0", 0, "ascii");
  head.writeUInt32LE(n, 4);
  head.writeUInt32LE(values.length / n, 8);
  head.writeUInt8(0, 12);
  const payload = Buffer.alloc(4 * values.length);
  values.forEach((v, i) => payload.writeFloatLE(v, 4 * i));
  return Buffer.concat([head, payload]);
}

describe.each(CODES)("%s n=%d rate=%s", (std, n, rate, seed) => {
  const handle = codec(std, n, rate);
  const codeArgs = ["--std", std, "--n", String(n), "--rate", rate];

  it("encodes byte-identically to the CLI", () => {
    const info = randomBits(3 * handle.k, seed);
    const viaBinding = encode(handle, info);

    const src = join(scratch, `${n}-info.bits`);
    const dst = join(scratch, `${n}-cw.bits`);
    writeFileSync(src, info);
    cli(["encode", ...codeArgs, "--in", src, "--out", dst]);
    expect(Buffer.from(viaBinding).equals(readFileSync(dst))).toBe(true);
  });

  it("decodes byte-identically to the CLI", () => {
    const info = randomBits(2 * handle.k, seed + 100);
    const cw = encode(handle, info);
    const llrs = noisyLlrs(cw, 2.0, handle.k / handle.n, seed + 200);
    const viaBinding = decode(handle, llrs);

    const src = join(scratch, `${n}-block.llr`);
    const dst = join(scratch, `${n}-out.rec`);
    writeFileSync(src, refLlrFile(llrs, handle.n));
    cli([
      "decode", ...codeArgs, "--iters", "10", "--qb", "10",
      "--workers", "1", "--in", src, "--out", dst,
    ]);
    const raw = readFileSync(dst);
    const recordBytes = handle.n / 8 + 2;
    expect(raw.length).toBe(2 * recordBytes);
    viaBinding.forEach((rec, f) => {
      const ref = raw.subarray(f * recordBytes, (f + 1) * recordBytes);
      const bits = new Uint8Array(handle.n);
      for (let j = 0; j < handle.n; j++) {
        bits[j] = (ref[j >> 3] >> (7 - (j & 7))) & 1;
      }
      expect(rec.hardBits).toEqual(bits);
      expect(rec.iterations).toBe(ref[recordBytes - 2]);
      expect(rec.converged).toBe(ref[recordBytes - 1] === 1);
    });
  });

  it("sweeps waterfalls byte-identically to the CLI", () => {
    const table = waterfall(handle, [1.5, 2.0, 2.5], {
      minErrors: 25,
      maxFrames: 512,
      seed,
    });
    const dst = join(scratch, `${n}-wf.csv`);
    cli([
      "simulate", ...codeArgs, "--iters", "10", "--qb", "10",
      "--workers", "1", "--arith", "float32", "--snr", "1.5:0.5:2.5",
      "--min-errors", "25", "--max-frames", "512",
      "--min-frames", "1", "--seed", String(seed), "--out", dst,
    ]);
    expect(table.csv).toBe(readFileSync(dst, "utf8"));
    expect(table.points).toHaveLength(3);
  });
});

describe("non-uniform grids", () => {
  it("stitches per-point sweeps into one table", () => {
    const handle = codec("wimax", 576, "1/2");
    const snrs = [1.0, 1.5, 3.0]; // uneven spacing forces per-point runs
    const opts = { minErrors: 25, maxFrames: 512, seed: 4 };
    const table = waterfall(handle, snrs, opts);
    expect(table.points.map((p) => p.ebn0Db)).toEqual(snrs);
    for (const [i, snr] of snrs.entries()) {
      const single = waterfall(handle, [snr], opts);
      expect(table.points[i]).toEqual(single.points[0]);
    }
  });
});

describe("calibrated operating point", () => {
  it("lands in the pinned BER and iteration windows", () => {
    const handle = codec("wimax", 2304, "1/2", { maxIterations: 8 });
    const table = waterfall(handle, [2.0], {
      minErrors: 2000,
      maxFrames: 4096,
      seed: 7,
    });
    const p = table.points[0];
    expect(p.bitErrors).toBeGreaterThanOrEqual(2000);
    expect(p.ber).toBeGreaterThanOrEqual(1.25e-3);
    expect(p.ber).toBeLessThanOrEqual(2.8e-3);
    expect(Math.abs(p.avgIters - 6.36)).toBeLessThanOrEqual(0.5);
  });
});
