"""Layered single-scan min-sum decoding.

Check messages are never stored per edge: each check row keeps only the two
smallest input magnitudes, the position of the smallest, a sign bitmap and the
total sign product, from which every outgoing message is reconstructed. Tiers
of Z rows are updated in sequence and posteriors are written back immediately,
so the next tier works on current values (layered schedule).

Float32 and wrap-around int16 arithmetic are supported. The numpy tier_update
here and the compiled batch kernels in _kernels perform identical operations
in identical order, so their results agree exactly.
"""

from __future__ import annotations

import struct
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from . import _kernels
from .codebook import ModelMatrix, Rate, SparseParityCheck, Standard
from .errors import ArithmeticMismatch, CorruptFile, SizeMismatch


class Arithmetic(Enum):
    Float32 = "float32"
    Fixed16 = "fixed16"

    @property
    def dtype(self):
        return np.float32 if self is Arithmetic.Float32 else np.int16


@dataclass
class LlrBlock:
    values: np.ndarray
    arithmetic: Arithmetic = Arithmetic.Float32

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=self.arithmetic.dtype)


@dataclass
class DecoderConfig:
    max_iterations: int = 10
    arithmetic: Arithmetic = Arithmetic.Float32
    q_b: int = 10
    early_termination: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 1 <= self.q_b <= 14:
            raise ValueError("q_b must stay in [1, 14] to keep int16 headroom")


@dataclass
class DecoderState:
    """Posteriors plus compressed per-check messages."""

    posterior: np.ndarray   # (N,) float32 or int16
    min1: np.ndarray        # (M,) smallest |Z_mn|
    min2: np.ndarray        # (M,) second smallest
    argmin: np.ndarray      # (M,) int8 edge offset of the smallest
    sign_bits: np.ndarray   # (M,) uint32, bit j set when edge j was negative
    sign_prod: np.ndarray   # (M,) uint8 parity of sign_bits
    arithmetic: Arithmetic

    def messages(self, h: SparseParityCheck, m: int) -> np.ndarray:
        """Reconstruct the stored check messages L_mn of row m."""
        deg = int(h.row_ptr[m + 1] - h.row_ptr[m])
        mags = np.full(deg, self.min1[m], dtype=self.posterior.dtype)
        mags[self.argmin[m]] = self.min2[m]
        neg = (self.sign_prod[m] ^ ((int(self.sign_bits[m]) >> np.arange(deg)) & 1)) == 1
        return np.where(neg, np.negative(mags), mags)


@dataclass
class DecodeResult:
    hard_bits: np.ndarray   # (N,) uint8
    iterations: int
    converged: bool
    k: int

    @property
    def info_bits(self) -> np.ndarray:
        return self.hard_bits[:self.k]


def init_state(h: SparseParityCheck, llr: LlrBlock | None = None,
               arithmetic: Arithmetic = Arithmetic.Float32) -> DecoderState:
    """Zeroed messages; posterior starts at the channel LLRs when given."""
    if llr is not None:
        arithmetic = llr.arithmetic
        if llr.values.shape != (h.n,):
            raise SizeMismatch(f"llr shape {llr.values.shape} != ({h.n},)")
        posterior = llr.values.copy()
    else:
        posterior = np.zeros(h.n, dtype=arithmetic.dtype)
    return DecoderState(
        posterior=posterior,
        min1=np.zeros(h.m, dtype=arithmetic.dtype),
        min2=np.zeros(h.m, dtype=arithmetic.dtype),
        argmin=np.zeros(h.m, dtype=np.int8),
        sign_bits=np.zeros(h.m, dtype=np.uint32),
        sign_prod=np.zeros(h.m, dtype=np.uint8),
        arithmetic=arithmetic)


def tier_update(state: DecoderState, h: SparseParityCheck, t: int) -> DecoderState:
    """Update all Z check rows of tier t and write posteriors back in place."""
    if not 0 <= t < h.m // h.z:
        raise ValueError(f"tier {t} outside [0, {h.m // h.z})")
    post = state.posterior
    for m in range(t * h.z, (t + 1) * h.z):
        cols = h.row(m)
        deg = cols.size
        offs = np.arange(deg)

        mags = np.full(deg, state.min1[m], dtype=post.dtype)
        mags[state.argmin[m]] = state.min2[m]
        neg = (int(state.sign_prod[m]) ^ ((int(state.sign_bits[m]) >> offs) & 1)) == 1
        l_old = np.where(neg, np.negative(mags), mags)

        zmn = post[cols] - l_old
        amag = np.abs(zmn)
        nm1 = amag.min()
        nam = int(np.argmin(amag))
        nm2 = np.partition(amag, 1)[1] if deg > 1 else amag[0]
        signs = zmn < 0
        nsb = int(np.sum(np.left_shift(1, offs[signs])))
        nsp = int(signs.sum()) & 1

        new_mags = np.full(deg, nm1, dtype=post.dtype)
        new_mags[nam] = nm2
        new_neg = (nsp ^ ((nsb >> offs) & 1)) == 1
        l_new = np.where(new_neg, np.negative(new_mags), new_mags)
        post[cols] = zmn + l_new

        state.min1[m] = nm1
        state.min2[m] = nm2
        state.argmin[m] = nam
        state.sign_bits[m] = nsb
        state.sign_prod[m] = nsp
    return state


def row_parities(h: SparseParityCheck, hard_bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(hard_bits, dtype=np.uint8)
    return np.bitwise_xor.reduceat(bits[h.row_cols], h.row_ptr[:-1])


def syndrome_check(h: SparseParityCheck, hard_bits: np.ndarray) -> bool:
    """True iff every check row XORs to zero."""
    bits = np.asarray(hard_bits, dtype=np.uint8)
    if bits.shape[-1] != h.n:
        raise SizeMismatch(f"hard bits length {bits.shape[-1]} != N={h.n}")
    return not row_parities(h, bits).any()


def quantize_llr(values: np.ndarray, q_b: int = 10, l_clip: float = 24.0) -> LlrBlock:
    """Linear map to the +/-(2^q_b - 1) integer range, round half to even."""
    if not 1 <= q_b <= 14:
        raise ValueError("q_b must stay in [1, 14]")
    lim = (1 << q_b) - 1
    scaled = np.rint(np.asarray(values, dtype=np.float64) * (lim / l_clip))
    return LlrBlock(np.clip(scaled, -lim, lim).astype(np.int16), Arithmetic.Fixed16)


def _kernel(arithmetic: Arithmetic):
    return (_kernels.decode_batch_f32 if arithmetic is Arithmetic.Float32
            else _kernels.decode_batch_i16)


def _check_block(h: SparseParityCheck, llr: LlrBlock, cfg: DecoderConfig):
    if llr.arithmetic is not cfg.arithmetic:
        raise ArithmeticMismatch(
            f"llr is {llr.arithmetic.value}, decoder wants {cfg.arithmetic.value}")
    if llr.values.shape[-1] != h.n:
        raise SizeMismatch(f"llr length {llr.values.shape[-1]} != N={h.n}")
    if h.max_row_degree > 32:
        raise SizeMismatch("sign bitmap holds at most 32 edges per row")


def decode(h: SparseParityCheck, llr: LlrBlock, cfg: DecoderConfig) -> DecodeResult:
    """Run layered super-iterations with per-iteration syndrome checks."""
    _check_block(h, llr, cfg)
    if llr.values.ndim != 1:
        raise SizeMismatch("decode takes a single codeword; use decode_block")
    vals = llr.values.reshape(1, -1)
    hard = np.empty((1, h.n), dtype=np.uint8)
    iters = np.empty(1, dtype=np.int32)
    conv = np.empty(1, dtype=np.uint8)
    _kernel(cfg.arithmetic)(h.row_ptr, h.row_cols, h.m // h.z, h.z, vals,
                            cfg.max_iterations, 1 if cfg.early_termination else 0,
                            hard, iters, conv)
    return DecodeResult(hard[0], int(iters[0]), bool(conv[0]), h.k)


_persistent_pools: dict[int, ThreadPoolExecutor] = {}
_pool_lock = threading.Lock()


def _persistent_pool(workers: int) -> ThreadPoolExecutor:
    with _pool_lock:
        pool = _persistent_pools.get(workers)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=workers)
            _persistent_pools[workers] = pool
        return pool


def decode_block(h: SparseParityCheck, llrs: LlrBlock, cfg: DecoderConfig,
                 workers: int = 1, pool: str = "simple") -> list[DecodeResult]:
    """Decode W codewords, contiguous chunks per worker, results in order.

    pool "simple" spawns a fresh thread pool per call, "mtx" reuses a
    persistent one; outputs are identical for any workers/pool choice.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if pool not in ("simple", "mtx"):
        raise ValueError(f"unknown pool style {pool!r}")
    _check_block(h, llrs, cfg)
    vals = llrs.values
    if vals.ndim != 2:
        raise SizeMismatch("decode_block takes a (W, N) block")
    w_total = vals.shape[0]
    if w_total == 0:
        return []
    hard = np.empty((w_total, h.n), dtype=np.uint8)
    iters = np.empty(w_total, dtype=np.int32)
    conv = np.empty(w_total, dtype=np.uint8)
    kern = _kernel(cfg.arithmetic)
    early = 1 if cfg.early_termination else 0
    chunk = -(-w_total // workers)  # ceil

    def run(start: int) -> None:
        stop = min(start + chunk, w_total)
        kern(h.row_ptr, h.row_cols, h.m // h.z, h.z, vals[start:stop],
             cfg.max_iterations, early, hard[start:stop],
             iters[start:stop], conv[start:stop])

    starts = range(0, w_total, chunk)
    if workers == 1 or len(starts) == 1:
        for s in starts:
            run(s)
    elif pool == "simple":
        with ThreadPoolExecutor(max_workers=workers) as ex:
            list(ex.map(run, starts))
    else:
        list(_persistent_pool(workers).map(run, starts))
    return [DecodeResult(hard[i], int(iters[i]), bool(conv[i]), h.k)
            for i in range(w_total)]


# --- LLR file format -------------------------------------------------------
# 16-byte header: magic "LLR0", uint32 N, uint32 codeword count, uint8
# arithmetic (0 = float32, 1 = fixed16), 3 pad bytes; then count*N values,
# little endian. All integers little endian.

_LLR_MAGIC = b"LLR0"
_LLR_HEADER = struct.Struct("<4sIIB3x")


def write_llr_file(path, block: LlrBlock) -> None:
    vals = block.values
    if vals.ndim == 1:
        vals = vals.reshape(1, -1)
    if vals.ndim != 2:
        raise SizeMismatch("LLR files hold a (count, N) block")
    count, n = vals.shape
    code = 0 if block.arithmetic is Arithmetic.Float32 else 1
    wire = vals.astype("<f4" if code == 0 else "<i2")
    with open(path, "wb") as f:
        f.write(_LLR_HEADER.pack(_LLR_MAGIC, n, count, code))
        f.write(wire.tobytes())


def read_llr_file(path) -> LlrBlock:
    with open(path, "rb") as f:
        head = f.read(_LLR_HEADER.size)
        if len(head) != _LLR_HEADER.size:
            raise CorruptFile(f"{path}: truncated header")
        magic, n, count, code = _LLR_HEADER.unpack(head)
        if magic != _LLR_MAGIC:
            raise CorruptFile(f"{path}: bad magic {magic!r}")
        if code not in (0, 1):
            raise CorruptFile(f"{path}: unknown arithmetic code {code}")
        arith = Arithmetic.Float32 if code == 0 else Arithmetic.Fixed16
        wire = "<f4" if code == 0 else "<i2"
        payload = f.read()
    expect = count * n * np.dtype(wire).itemsize
    if len(payload) != expect:
        raise CorruptFile(f"{path}: payload {len(payload)} B, header says {expect} B")
    vals = np.frombuffer(payload, dtype=wire).reshape(count, n)
    return LlrBlock(vals.astype(arith.dtype), arith)


# --- memory profile and build configurations ------------------------------

def state_size_report(h: SparseParityCheck, arithmetic: Arithmetic) -> dict:
    """Byte counts of one decoder working set (graph excluded: it is shared
    read-only across workers like the compiled-in model matrix it comes from)."""
    vb = np.dtype(arithmetic.dtype).itemsize
    report = {
        "posterior": h.n * vb,
        "channel_llr": h.n * vb,
        "min1": h.m * vb,
        "min2": h.m * vb,
        "argmin": h.m * 1,
        "sign_bits": h.m * 4,
        "sign_prod": h.m * 1,
        "row_scratch": h.max_row_degree * vb,
        "hard_bits": h.n * 1,
    }
    report["total"] = sum(report.values())
    report["shared_graph"] = (h.row_ptr.nbytes + h.row_cols.nbytes)
    return report


@dataclass(frozen=True)
class ConfigProfile:
    """Build profile: A universal float, B packed WiMAX fixed, C minimal."""

    name: str
    arithmetic: Arithmetic
    packed_encoder: bool
    description: str

    def allows(self, mm: ModelMatrix) -> bool:
        if self.name == "A":
            return True
        if self.name == "B":
            return mm.standard is Standard.Wimax and mm.z % 8 == 0
        return (mm.standard is Standard.Wimax and mm.n == 576
                and mm.rate is Rate.R12)

    def config(self, **overrides) -> DecoderConfig:
        return replace(DecoderConfig(arithmetic=self.arithmetic), **overrides)


PROFILES = {
    "A": ConfigProfile("A", Arithmetic.Float32, False,
                       "universal: every code, array encoder, float decoder"),
    "B": ConfigProfile("B", Arithmetic.Fixed16, True,
                       "constrained: byte-aligned WiMAX, packed encoder, int16"),
    "C": ConfigProfile("C", Arithmetic.Fixed16, True,
                       "minimal: WiMAX N=576 R=1/2 only, packed encoder, int16"),
}
