/** Seeded data generation for reproducible spawn-level tests. */

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomBits(count: number, seed: number): Uint8Array {
  const rand = mulberry32(seed);
  const bits = new Uint8Array(count);
  for (let i = 0; i < count; i++) bits[i] = rand() < 0.5 ? 0 : 1;
  return bits;
}

/** Standard normal draws via Box-Muller. */
export function randomNormals(count: number, seed: number): Float64Array {
  const rand = mulberry32(seed);
  const out = new Float64Array(count);
  for (let i = 0; i < count; i += 2) {
    const u = Math.max(rand(), 1e-12);
    const v = rand();
    const r = Math.sqrt(-2 * Math.log(u));
    out[i] = r * Math.cos(2 * Math.PI * v);
    if (i + 1 < count) out[i + 1] = r * Math.sin(2 * Math.PI * v);
  }
  return out;
}

/** BPSK + AWGN channel LLRs for the given codeword bits. */
export function noisyLlrs(
  codeBits: Uint8Array,
  ebn0Db: number,
  rate: number,
  seed: number,
): Float32Array {
  const sigma2 = 1 / (2 * rate * 10 ** (ebn0Db / 10));
  const noise = randomNormals(codeBits.length, seed);
  const out = new Float32Array(codeBits.length);
  for (let i = 0; i < codeBits.length; i++) {
    const y = 1 - 2 * codeBits[i] + Math.sqrt(sigma2) * noise[i];
    out[i] = Math.fround((2 / sigma2) * y);
  }
  return out;
}
