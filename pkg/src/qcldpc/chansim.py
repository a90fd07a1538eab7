"""BPSK/AWGN channel, Monte-Carlo waterfall runs, throughput benchmark.

Frames are keyed individually: frame f of SNR point p draws its info bits and
noise from a counter-based generator seeded with (seed, p, f), so results are
byte-identical for any worker count or batch schedule. Stopping decisions are
taken on fixed 256-frame batch boundaries for the same reason.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .codebook import ModelMatrix, expand
from .decoder import (Arithmetic, DecoderConfig, LlrBlock, decode_block,
                      quantize_llr)
from .encoder import EncoderVariant, encode_array, make_plan
from .errors import DivByZeroSigma

BATCH_FRAMES = 256


def ebn0_to_sigma2(ebn0_db: float, rate: float) -> float:
    """Noise variance for unit-energy BPSK at a given Eb/N0 and code rate."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate {rate} outside (0, 1]")
    return 1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: float
    seed: int = 0
    sigma2: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sigma2", ebn0_to_sigma2(self.ebn0_db, self.rate))


def bpsk_modulate(bits: np.ndarray) -> np.ndarray:
    """Map bit 0 to +1.0 and bit 1 to -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def awgn(symbols: np.ndarray, sigma2: float, rng: np.random.Generator) -> np.ndarray:
    if sigma2 < 0:
        raise ValueError("sigma2 must be >= 0")
    if sigma2 == 0:
        return np.asarray(symbols, dtype=np.float64).copy()
    return symbols + math.sqrt(sigma2) * rng.standard_normal(np.shape(symbols))


def llr_from_samples(samples: np.ndarray, sigma2: float) -> LlrBlock:
    """Channel LLR 2y/sigma^2 for BPSK over AWGN."""
    if sigma2 <= 0:
        raise DivByZeroSigma(f"sigma2 = {sigma2}")
    vals = (2.0 / sigma2) * np.asarray(samples, dtype=np.float64)
    return LlrBlock(vals.astype(np.float32), Arithmetic.Float32)


def frame_rng(seed: int, point: int, frame: int) -> np.random.Generator:
    """Counter-keyed stream: independent of scheduling and worker count."""
    return np.random.Generator(np.random.Philox(key=[seed, (point << 40) | frame]))


@dataclass(frozen=True)
class WaterfallPoint:
    ebn0_db: float
    frames: int
    bits_decoded: int
    bit_errors: int
    frame_errors: int
    avg_iterations: float

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_decoded if self.bits_decoded else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0


@dataclass
class WaterfallTable:
    points: list[WaterfallPoint]

    CSV_HEADER = "ebn0_db,frames,bits,bit_errors,frame_errors,ber,fer,avg_iters"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for p in self.points:
            lines.append("%.6g,%d,%d,%d,%d,%.6g,%.6g,%.6g" % (
                p.ebn0_db, p.frames, p.bits_decoded, p.bit_errors,
                p.frame_errors, p.ber, p.fer, p.avg_iterations))
        return "\n".join(lines) + "\n"


@dataclass
class ThroughputReport:
    arithmetic: Arithmetic
    workers: int
    pool: str
    frames: int
    info_bits: int
    seconds: float
    mbps: float

    CSV_HEADER = "arithmetic,workers,pool,frames,info_bits,seconds,mbps"

    def csv_line(self) -> str:
        return "%s,%d,%s,%d,%d,%.6g,%.6g" % (
            self.arithmetic.value, self.workers, self.pool, self.frames,
            self.info_bits, self.seconds, self.mbps)

    def summary(self) -> str:
        return (f"{self.arithmetic.value} workers={self.workers} pool={self.pool}: "
                f"{self.info_bits} info bits in {self.seconds:.3f} s "
                f"= {self.mbps:.2f} Mbps")


def _gen_batch(mm: ModelMatrix, seed: int, point: int, start: int, count: int):
    """Info bits and noise for frames [start, start+count), one key per frame."""
    info = np.empty((count, mm.k), dtype=np.uint8)
    noise = np.empty((count, mm.n), dtype=np.float64)
    for i in range(count):
        g = frame_rng(seed, point, start + i)
        info[i] = g.integers(0, 2, size=mm.k, dtype=np.uint8)
        noise[i] = g.standard_normal(mm.n)
    return info, noise


def _llr_batch(code_bits: np.ndarray, noise: np.ndarray, sigma2: float,
               cfg: DecoderConfig) -> LlrBlock:
    samples = bpsk_modulate(code_bits) + math.sqrt(sigma2) * noise
    block = llr_from_samples(samples, sigma2)
    if cfg.arithmetic is Arithmetic.Fixed16:
        return quantize_llr(block.values, cfg.q_b)
    return block


def run_waterfall(code: ModelMatrix, cfg: DecoderConfig, snrs_db,
                  min_errors: int = 10000, max_frames: int = 1_000_000,
                  seed: int = 0, workers: int = 1, min_frames: int = 1,
                  pool: str = "simple") -> WaterfallTable:
    """Simulate the chain info->encode->BPSK->AWGN->LLR->decode per SNR point.

    A point stops at the first 256-frame batch boundary where bit_errors >=
    min_errors and frames >= min_frames, or when frames reaches max_frames.
    """
    if min_errors < 1:
        raise ValueError("min_errors must be >= 1")
    h = expand(code)
    plan = make_plan(code, EncoderVariant.Array)
    points = []
    for p_idx, ebn0 in enumerate(snrs_db):
        sigma2 = ebn0_to_sigma2(ebn0, code.rate.fraction)
        frames = bit_errors = frame_errors = iter_sum = 0
        while True:
            count = min(BATCH_FRAMES, max_frames - frames)
            if count <= 0:
                break
            info, noise = _gen_batch(code, seed, p_idx, frames, count)
            codewords = encode_array(plan, info)
            llrs = _llr_batch(codewords, noise, sigma2, cfg)
            results = decode_block(h, llrs, cfg, workers=workers, pool=pool)
            for i, r in enumerate(results):
                nerr = int(np.count_nonzero(r.info_bits != info[i]))
                bit_errors += nerr
                frame_errors += 1 if nerr else 0
                iter_sum += r.iterations
            frames += count
            if bit_errors >= min_errors and frames >= min_frames:
                break
        points.append(WaterfallPoint(
            ebn0_db=float(ebn0), frames=frames, bits_decoded=frames * code.k,
            bit_errors=bit_errors, frame_errors=frame_errors,
            avg_iterations=iter_sum / frames if frames else 0.0))
    return WaterfallTable(points)


def run_throughput_bench(code: ModelMatrix, cfg: DecoderConfig, workers: int = 1,
                         pool: str = "simple", frames: int = 1000,
                         seed: int = 0, ebn0_db: float = 2.0) -> ThroughputReport:
    """Time decode_block only, in blocks of 10 codewords per worker.

    Iteration count is pinned to 10 with early termination off so runtimes
    compare like for like; frame generation and one warmup call are untimed.
    """
    bench_cfg = replace(cfg, max_iterations=10, early_termination=False)
    if frames <= 0:
        return ThroughputReport(bench_cfg.arithmetic, workers, pool, 0, 0, 0.0, 0.0)
    h = expand(code)
    plan = make_plan(code, EncoderVariant.Array)
    sigma2 = ebn0_to_sigma2(ebn0_db, code.rate.fraction)
    info, noise = _gen_batch(code, seed, 0, 0, frames)
    codewords = encode_array(plan, info)
    llrs = _llr_batch(codewords, noise, sigma2, bench_cfg)

    block = 10 * workers
    warm = LlrBlock(llrs.values[:min(frames, block)].copy(), llrs.arithmetic)
    decode_block(h, warm, bench_cfg, workers=workers, pool=pool)

    t0 = time.perf_counter()
    for start in range(0, frames, block):
        chunk = LlrBlock(llrs.values[start:start + block], llrs.arithmetic)
        decode_block(h, chunk, bench_cfg, workers=workers, pool=pool)
    seconds = time.perf_counter() - t0
    bits = frames * code.k
    mbps = bits / seconds / 1e6 if seconds > 0 else 0.0
    return ThroughputReport(bench_cfg.arithmetic, workers, pool, frames,
                            bits, seconds, mbps)
