"""Model matrices of the 802.11 and 802.16 QC-LDPC codes.

A model matrix is an mb x nb grid of integers: -1 marks a zero block, 0 an
identity block and s > 0 an identity block cyclically shifted by s. Expanding
every entry to its Z x Z block yields the binary parity-check matrix H with
N = nb*Z columns and M = mb*Z rows. The systematic part occupies the first kb
block-columns, column kb is the h_b column with the paired end values used by
the direct encoder, and the remaining columns form the double diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import BadZ, UnsupportedCode


class Standard(Enum):
    Wifi = "wifi"
    Wimax = "wimax"


class Rate(Enum):
    R12 = "1/2"
    R23A = "2/3A"
    R23B = "2/3B"
    R34A = "3/4A"
    R34B = "3/4B"
    R56 = "5/6"

    @property
    def fraction(self) -> float:
        return _RATE_FRACTION[self]


_RATE_FRACTION = {
    Rate.R12: 1 / 2,
    Rate.R23A: 2 / 3,
    Rate.R23B: 2 / 3,
    Rate.R34A: 3 / 4,
    Rate.R34B: 3 / 4,
    Rate.R56: 5 / 6,
}

# 802.11 table: N -> Z, nb is always 24. 802.16 allows Z = 24..96 step 4.
WIFI_Z = {648: 27, 1296: 54, 1944: 81}
WIFI_RATES = (Rate.R12, Rate.R23A, Rate.R34A, Rate.R56)
WIMAX_Z = tuple(range(24, 97, 4))
WIMAX_Z0 = 96
NB = 24

_KB = {Rate.R12: 12, Rate.R23A: 16, Rate.R23B: 16,
       Rate.R34A: 18, Rate.R34B: 18, Rate.R56: 20}


def parse_standard(value) -> Standard:
    if isinstance(value, Standard):
        return value
    try:
        return Standard(str(value).lower())
    except ValueError:
        raise UnsupportedCode(f"unknown standard {value!r}") from None


def parse_rate(value, standard: Standard | None = None) -> Rate:
    """Map a rate string to the enum; bare 2/3 and 3/4 select the A variant."""
    if isinstance(value, Rate):
        rate = value
    else:
        s = str(value).upper()
        if s in ("2/3", "3/4"):
            s += "A"
        try:
            rate = Rate(s)
        except ValueError:
            raise UnsupportedCode(f"unknown rate {value!r}") from None
    if standard is Standard.Wifi and rate not in WIFI_RATES:
        raise UnsupportedCode(f"wifi defines no {rate.value} code")
    return rate


@dataclass(frozen=True)
class ModelMatrix:
    standard: Standard
    rate: Rate
    z: int
    nb: int
    kb: int
    entries: np.ndarray  # (mb, nb) int32, mb = nb - kb

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=np.int32)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        if entries.shape != (self.mb, self.nb):
            raise ValueError(f"entries shape {entries.shape} != ({self.mb}, {self.nb})")
        if entries.min() < -1 or entries.max() >= self.z:
            raise ValueError("entries must lie in [-1, z)")

    @property
    def mb(self) -> int:
        return self.nb - self.kb

    @property
    def n(self) -> int:
        return self.nb * self.z

    @property
    def k(self) -> int:
        return self.kb * self.z

    @property
    def m(self) -> int:
        return self.mb * self.z


@dataclass(frozen=True)
class SparseParityCheck:
    """Expanded H as flat CSR-style adjacency, both row- and column-major."""

    n: int
    k: int
    m: int
    z: int
    row_ptr: np.ndarray   # (m+1,) int32
    row_cols: np.ndarray  # (edges,) int32, ascending within each row
    col_ptr: np.ndarray   # (n+1,) int32
    col_rows: np.ndarray  # (edges,) int32, ascending within each column

    def row(self, m: int) -> np.ndarray:
        return self.row_cols[self.row_ptr[m]:self.row_ptr[m + 1]]

    def col(self, n: int) -> np.ndarray:
        return self.col_rows[self.col_ptr[n]:self.col_ptr[n + 1]]

    @property
    def row_degrees(self) -> np.ndarray:
        return np.diff(self.row_ptr)

    @property
    def col_degrees(self) -> np.ndarray:
        return np.diff(self.col_ptr)

    @property
    def max_row_degree(self) -> int:
        return int(self.row_degrees.max())

    @property
    def edges(self) -> int:
        return int(self.row_cols.shape[0])


@dataclass
class StructureReport:
    hb_pair_ok: bool
    hb_y_index: int           # -1 when no unique interior entry exists
    double_diagonal_ok: bool
    messages: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.messages


def _data_file(standard: Standard, n_bits: int, rate: Rate) -> str:
    if standard is Standard.Wifi:
        slug = {Rate.R12: "12", Rate.R23A: "23", Rate.R34A: "34", Rate.R56: "56"}[rate]
        return f"wifi_n{n_bits}_r{slug}.txt"
    return f"wimax_r{rate.value.replace('/', '').lower()}.txt"


def parse_model_matrix_text(text: str) -> ModelMatrix:
    """Parse the matrix text format: 'standard rate z nb kb' then mb rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    std_s, rate_s, z_s, nb_s, kb_s = lines[0].split()
    standard = parse_standard(std_s)
    rate = parse_rate(rate_s)
    z, nb, kb = int(z_s), int(nb_s), int(kb_s)
    rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    return ModelMatrix(standard, rate, z, nb, kb, np.array(rows, dtype=np.int32))


def format_model_matrix_text(mm: ModelMatrix) -> str:
    rate = mm.rate.value
    if mm.standard is Standard.Wifi:
        rate = rate.rstrip("AB")
    head = f"{mm.standard.value} {rate} {mm.z} {mm.nb} {mm.kb}"
    body = "\n".join(" ".join(f"{v:3d}" for v in row) for row in mm.entries)
    return head + "\n" + body + "\n"


@lru_cache(maxsize=None)
def _load_embedded(name: str) -> ModelMatrix:
    text = resources.files("qcldpc.data").joinpath(name).read_text()
    return parse_model_matrix_text(text)


def get_model_matrix(standard, n_bits: int, rate) -> ModelMatrix:
    """Look up the embedded code; WiMAX matrices are scaled down from Z=96."""
    standard = parse_standard(standard)
    rate = parse_rate(rate, standard)
    if standard is Standard.Wifi:
        if n_bits not in WIFI_Z:
            raise UnsupportedCode(f"wifi defines no N={n_bits} code")
        return _load_embedded(_data_file(standard, n_bits, rate))
    if n_bits % NB != 0 or n_bits // NB not in WIMAX_Z:
        raise UnsupportedCode(f"wimax defines no N={n_bits} code")
    base = _load_embedded(_data_file(standard, n_bits, rate))
    return scale_model_matrix(base, n_bits // NB)


def scale_model_matrix(base: ModelMatrix, z_target: int) -> ModelMatrix:
    """Scale a Z=96 WiMAX base matrix: floor(p*z/96), except p mod z for 2/3A."""
    if base.standard is not Standard.Wimax or base.z != WIMAX_Z0:
        raise BadZ("scaling starts from the Z=96 wimax base matrix")
    if z_target not in WIMAX_Z:
        raise BadZ(f"z={z_target} not in the supported 24..96 step 4 table")
    e = base.entries
    if base.rate is Rate.R23A:
        scaled = np.where(e > 0, e % z_target, e)
    else:
        scaled = np.where(e > 0, (e * z_target) // WIMAX_Z0, e)
    return ModelMatrix(base.standard, base.rate, z_target, base.nb, base.kb,
                       scaled.astype(np.int32))


def expand(mm: ModelMatrix) -> SparseParityCheck:
    """Expand shift entries to the sparse binary H.

    Entry e >= 0 at block (i, j) puts a one at (i*Z + r, j*Z + (r+e) % Z)
    for every r, so each block contributes one column index per row.
    """
    z = mm.z
    e = mm.entries
    r = np.arange(z, dtype=np.int32)

    row_chunks, col_chunks = [], []
    row_deg = np.zeros(mm.m, dtype=np.int32)
    col_deg = np.zeros(mm.n, dtype=np.int32)
    for i in range(mm.mb):
        j_nz = np.flatnonzero(e[i] >= 0).astype(np.int32)
        shifts = e[i, j_nz]
        # (z, deg): row i*z+r lists its columns in ascending block order
        cols = j_nz[None, :] * z + (r[:, None] + shifts[None, :]) % z
        row_chunks.append(cols.ravel())
        row_deg[i * z:(i + 1) * z] = j_nz.size
    for j in range(mm.nb):
        i_nz = np.flatnonzero(e[:, j] >= 0).astype(np.int32)
        shifts = e[i_nz, j]
        rows = i_nz[None, :] * z + (r[:, None] - shifts[None, :]) % z
        col_chunks.append(rows.ravel())
        col_deg[j * z:(j + 1) * z] = i_nz.size

    row_ptr = np.zeros(mm.m + 1, dtype=np.int32)
    np.cumsum(row_deg, out=row_ptr[1:])
    col_ptr = np.zeros(mm.n + 1, dtype=np.int32)
    np.cumsum(col_deg, out=col_ptr[1:])
    return SparseParityCheck(
        n=mm.n, k=mm.k, m=mm.m, z=z,
        row_ptr=row_ptr, row_cols=np.concatenate(row_chunks).astype(np.int32),
        col_ptr=col_ptr, col_rows=np.concatenate(col_chunks).astype(np.int32))


def validate_structure(mm: ModelMatrix) -> StructureReport:
    """Check the h_b pair/interior structure and the double diagonal."""
    e = mm.entries
    mb, kb = mm.mb, mm.kb
    messages = []

    hb = e[:, kb]
    pair_ok = bool(hb[0] >= 0 and hb[0] == hb[mb - 1])
    if not pair_ok:
        messages.append(f"h_b end values {hb[0]} and {hb[mb - 1]} are not a "
                        "non-negative pair")
    interior = np.flatnonzero(hb[1:mb - 1] >= 0) + 1
    if interior.size == 1:
        y = int(interior[0])
    else:
        y = -1
        messages.append(f"h_b has {interior.size} interior entries, expected 1")

    dd_ok = True
    for i in range(mb):
        for j in range(kb + 1, mm.nb):
            want = 0 if j - (kb + 1) in (i - 1, i) else -1
            if e[i, j] != want:
                dd_ok = False
                messages.append(f"double diagonal broken at ({i}, {j}): "
                                f"{e[i, j]} != {want}")
    return StructureReport(pair_ok, y, dd_ok, messages)


def export_alist(h: SparseParityCheck) -> str:
    """Serialize to alist text: sizes, max degrees, degree lists, 1-based
    neighbor lists for every column then every row, padded with 0."""
    col_deg = h.col_degrees
    row_deg = h.row_degrees
    max_col = int(col_deg.max())
    max_row = int(row_deg.max())
    lines = [f"{h.n} {h.m}", f"{max_col} {max_row}",
             " ".join(str(d) for d in col_deg),
             " ".join(str(d) for d in row_deg)]
    for n in range(h.n):
        idx = (h.col(n) + 1).tolist() + [0] * (max_col - int(col_deg[n]))
        lines.append(" ".join(str(v) for v in idx))
    for m in range(h.m):
        idx = (h.row(m) + 1).tolist() + [0] * (max_row - int(row_deg[m]))
        lines.append(" ".join(str(v) for v in idx))
    return "\n".join(lines) + "\n"


def supported_codes():
    """Yield (standard, n_bits, rate) for every embedded code."""
    for n_bits in WIFI_Z:
        for rate in WIFI_RATES:
            yield Standard.Wifi, n_bits, rate
    for z in WIMAX_Z:
        for rate in Rate:
            yield Standard.Wimax, NB * z, rate
