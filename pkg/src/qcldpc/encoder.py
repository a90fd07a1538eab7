"""Direct systematic QC-LDPC encoding from the model matrix.

Two variants: the array encoder keeps one bit per byte and works for every
code; the packed encoder keeps bits packed MSB-first in unsigned words and
needs Z divisible by 8. Parity is computed straight from H: with the parity
blocks v_0..v_{mb-1} and the per-row systematic sums S_i, summing all block
rows cancels everything but the h_b column's unpaired entry, which yields v_0;
the remaining blocks follow row by row from the double diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .codebook import ModelMatrix
from .errors import MalformedHb, SizeMismatch, UnsupportedZ

_BIG = {16: ">u2", 32: ">u4"}
_NATIVE = {8: np.uint8, 16: np.uint16, 32: np.uint32}


class EncoderVariant(Enum):
    Array = "array"
    Packed = "packed"


@dataclass(frozen=True)
class EncoderPlan:
    matrix: ModelMatrix
    y: int             # row of the unpaired h_b entry
    hb_shift: int      # H_bm(y, kb)
    variant: EncoderVariant
    word_bits: int = 8


def find_y(mm: ModelMatrix) -> tuple[int, int]:
    """Locate the single interior non-negative entry of the h_b column."""
    hb = mm.entries[:, mm.kb]
    interior = np.flatnonzero(hb[1:mm.mb - 1] >= 0) + 1
    if interior.size != 1:
        raise MalformedHb(f"h_b column has {interior.size} interior entries")
    y = int(interior[0])
    return y, int(hb[y])


def default_word_bits(z: int) -> int:
    for wb in (32, 16, 8):
        if z % wb == 0:
            return wb
    return 8


def make_plan(mm: ModelMatrix, variant: EncoderVariant = EncoderVariant.Array,
              word_bits: int | None = None) -> EncoderPlan:
    y, hb_shift = find_y(mm)
    if variant is EncoderVariant.Packed:
        if mm.z % 8 != 0:
            raise UnsupportedZ(f"packed encoder needs z % 8 == 0, got z={mm.z}")
        wb = default_word_bits(mm.z) if word_bits is None else word_bits
        if wb not in _NATIVE or mm.z % wb != 0:
            raise UnsupportedZ(f"word size {wb} does not divide z={mm.z}")
    else:
        wb = 8
    return EncoderPlan(mm, y, hb_shift, variant, wb)


# --- packed-word cyclic shifts -------------------------------------------

def cyclic_shift_packed(a: np.ndarray, s: int, z: int) -> np.ndarray:
    """Rotate a packed Z-bit block so output bit j = input bit (j-s) mod Z.

    Words are combined pairwise with two linear shifts and OR, then the whole
    array is rotated by the word part of the shift. sb == 0 would need a
    shift by the full word width, so it degenerates to a word rotation.
    """
    wb = a.dtype.itemsize * 8
    zw = a.shape[-1]
    if a.dtype not in (np.uint8, np.uint16, np.uint32) or zw * wb != z:
        raise UnsupportedZ(f"block of {zw} x {wb}-bit words does not hold z={z}")
    if not 0 <= s < z:
        raise ValueError(f"shift {s} outside [0, {z})")
    sw, sb = divmod(s, wb)
    if sb == 0:
        return np.roll(a, sw, axis=-1)
    prev = np.roll(a, 1, axis=-1)
    combined = (prev << (wb - sb)) | (a >> sb)
    return np.roll(combined, sw, axis=-1)


def cyclic_shift_inverse(a: np.ndarray, s: int, z: int) -> np.ndarray:
    """Inverse rotation: equals cyclic_shift_packed by (Z - s) mod Z.

    Accepts a one-cell-per-bit block as well (last axis of length Z).
    """
    if a.shape[-1] == z:
        return np.roll(a, -(s % z), axis=-1)
    return cyclic_shift_packed(a, (z - s) % z, z)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    return np.packbits(np.asarray(bits, dtype=np.uint8), axis=-1)


def unpack_bits(data: np.ndarray, n_bits: int) -> np.ndarray:
    return np.unpackbits(np.asarray(data, dtype=np.uint8), axis=-1, count=n_bits)


def bytes_to_words(data: np.ndarray, word_bits: int) -> np.ndarray:
    """View MSB-first bytes as big-endian words, converted to native order."""
    a = np.ascontiguousarray(data, dtype=np.uint8)
    if word_bits == 8:
        return a
    return a.view(_BIG[word_bits]).astype(_NATIVE[word_bits])


def words_to_bytes(words: np.ndarray) -> np.ndarray:
    wb = words.dtype.itemsize * 8
    if wb == 8:
        return words
    return np.ascontiguousarray(words.astype(_BIG[wb])).view(np.uint8)


# --- encoding -------------------------------------------------------------

def _perm(u: np.ndarray, e: int) -> np.ndarray:
    # shifted-identity block: output bit r gathers u[(r+e) mod z]
    return np.roll(u, -e, axis=-1)


def encode_array(plan: EncoderPlan, info: np.ndarray) -> np.ndarray:
    """Encode one-bit-per-cell info of shape (..., K) to (..., N)."""
    if plan.variant is not EncoderVariant.Array:
        raise ValueError("plan is not for the array encoder")
    mm = plan.matrix
    info = np.asarray(info, dtype=np.uint8)
    if info.shape[-1] != mm.k:
        raise SizeMismatch(f"info length {info.shape[-1]} != K={mm.k}")
    e = mm.entries
    z, mb, kb = mm.z, mm.mb, mm.kb
    u = info.reshape(info.shape[:-1] + (kb, z))

    s_blocks = np.zeros(info.shape[:-1] + (mb, z), dtype=np.uint8)
    for i in range(mb):
        acc = s_blocks[..., i, :]
        for j in range(kb):
            if e[i, j] >= 0:
                acc ^= _perm(u[..., j, :], e[i, j])

    hb = e[:, kb]
    v = np.zeros_like(s_blocks)
    ssum = np.bitwise_xor.reduce(s_blocks, axis=-2)
    v[..., 0, :] = np.roll(ssum, plan.hb_shift, axis=-1)  # inverse permutation
    v[..., 1, :] = s_blocks[..., 0, :] ^ _perm(v[..., 0, :], hb[0])
    for i in range(1, mb - 1):
        nxt = v[..., i, :] ^ s_blocks[..., i, :]
        if hb[i] >= 0:
            nxt = nxt ^ _perm(v[..., 0, :], hb[i])
        v[..., i + 1, :] = nxt
    parity = v.reshape(info.shape[:-1] + (mb * z,))
    return np.concatenate([info, parity], axis=-1)


def encode_packed(plan: EncoderPlan, info: np.ndarray) -> np.ndarray:
    """Encode packed info bytes of shape (..., K/8) to (..., N/8)."""
    if plan.variant is not EncoderVariant.Packed:
        raise ValueError("plan is not for the packed encoder")
    mm = plan.matrix
    if mm.z % 8 != 0:
        raise UnsupportedZ(f"packed encoder needs z % 8 == 0, got z={mm.z}")
    info = np.asarray(info, dtype=np.uint8)
    if info.shape[-1] != mm.k // 8:
        raise SizeMismatch(f"info bytes {info.shape[-1]} != K/8={mm.k // 8}")
    e = mm.entries
    z, mb, kb, wb = mm.z, mm.mb, mm.kb, plan.word_bits
    u = bytes_to_words(info.reshape(info.shape[:-1] + (kb, z // 8)), wb)

    s_blocks = np.zeros(u.shape[:-2] + (mb, u.shape[-1]), dtype=u.dtype)
    for i in range(mb):
        acc = s_blocks[..., i, :]
        for j in range(kb):
            if e[i, j] >= 0:
                # multiplying by the shift-e block is the inverse rotation
                acc ^= cyclic_shift_inverse(u[..., j, :], int(e[i, j]), z)

    hb = e[:, kb]
    v = np.zeros_like(s_blocks)
    ssum = np.bitwise_xor.reduce(s_blocks, axis=-2)
    v[..., 0, :] = cyclic_shift_packed(ssum, plan.hb_shift, z)
    v[..., 1, :] = s_blocks[..., 0, :] ^ cyclic_shift_inverse(v[..., 0, :], int(hb[0]), z)
    for i in range(1, mb - 1):
        nxt = v[..., i, :] ^ s_blocks[..., i, :]
        if hb[i] >= 0:
            nxt = nxt ^ cyclic_shift_inverse(v[..., 0, :], int(hb[i]), z)
        v[..., i + 1, :] = nxt
    parity = words_to_bytes(v).reshape(info.shape[:-1] + (mb * z // 8,))
    return np.concatenate([info, parity], axis=-1)


def encode(plan: EncoderPlan, data: np.ndarray) -> np.ndarray:
    if plan.variant is EncoderVariant.Packed:
        return encode_packed(plan, data)
    return encode_array(plan, data)
