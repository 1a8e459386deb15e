"""Dense exact linear algebra over the fields of a :class:`FieldTower`.

Three elimination back ends share one contract:

* GF(2): rows bit-packed into uint64 words, row operations are XORs;
* GF(3): rows bit-sliced into two uint64 planes (one for the digit 1, one
  for the digit 2), row operations use a branch-free add formula;
* anything else: table lookups on the tower encodings.

The packed paths are optimisations only and must agree bit for bit with
the generic path (``rref(..., method="generic")``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gf import DTYPE, Field, FieldMismatchError

_ONE = np.uint64(1)


@dataclass(frozen=True, eq=False)
class MatrixGF:
    """A dense matrix whose entries are encodings of elements of ``field``."""

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=DTYPE)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        self.field.check(a)
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=DTYPE))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=DTYPE))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"MatrixGF({self.field}, {self.rows}x{self.cols})"

    def T(self) -> "MatrixGF":
        return MatrixGF(self.field, self.entries.T)

    def vstack(self, other: "MatrixGF") -> "MatrixGF":
        _same_field(self, other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return MatrixGF(self.field, np.vstack([self.entries, other.entries]))

    def embed(self, field: Field) -> "MatrixGF":
        """Same entries, regarded as a matrix over a larger field of the tower."""
        if field.tower != self.field.tower or field.order % self.field.order:
            raise FieldMismatchError(f"cannot embed {self.field} into {field}")
        return MatrixGF(field, self.entries)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.entries) + "\n"

    def sidecar(self) -> dict:
        return {
            "field": self.field.order,
            "rows": self.rows,
            "cols": self.cols,
            "tower": self.field.tower.describe(),
        }


def _same_field(a: MatrixGF, b: MatrixGF) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")


class RREF(NamedTuple):
    matrix: MatrixGF
    rank: int
    pivots: tuple[int, ...]


# -- packing -----------------------------------------------------------------

def _pack_bits(bits: np.ndarray) -> np.ndarray:
    rows, cols = bits.shape
    words = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack_bits(words: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols].astype(DTYPE)


def _gf3_add(x1, x2, y1, y2):
    t = (x1 | y2) ^ (x2 | y1)
    return (x2 | y2) ^ t, (x1 | y1) ^ t


# -- elimination back ends ---------------------------------------------------

def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    w = _pack_bits(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = divmod(c, 64)
        sh = np.uint64(bit)
        col = (w[r:, word] >> sh) & _ONE
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
        col = (w[:, word] >> sh) & _ONE
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            w[hit, word:] ^= w[r, word:]
        pivots.append(c)
        r += 1
    return _unpack_bits(w, cols), pivots


def _rref_gf3(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    p1 = _pack_bits(a == 1)
    p2 = _pack_bits(a == 2)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = divmod(c, 64)
        sh = np.uint64(bit)
        nzmask = ((p1[r:, word] | p2[r:, word]) >> sh) & _ONE
        nz = np.flatnonzero(nzmask)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            p1[[r, p]] = p1[[p, r]]
            p2[[r, p]] = p2[[p, r]]
        if (p2[r, word] >> sh) & _ONE:
            # scale the pivot row by 2 = -1
            p1[r], p2[r] = p2[r].copy(), p1[r].copy()
        piv1 = p1[r, word:]
        piv2 = p2[r, word:]
        ones = (p1[:, word] >> sh) & _ONE
        twos = (p2[:, word] >> sh) & _ONE
        ones[r] = 0
        # rows holding 1 subtract the pivot row, rows holding 2 add it
        for hit, y1, y2 in ((np.flatnonzero(ones), piv2, piv1), (np.flatnonzero(twos), piv1, piv2)):
            if hit.size:
                z1, z2 = _gf3_add(p1[hit, word:], p2[hit, word:], y1, y2)
                p1[hit, word:] = z1
                p2[hit, word:] = z2
        pivots.append(c)
        r += 1
    out = _unpack_bits(p1, cols) + 2 * _unpack_bits(p2, cols)
    return out, pivots


def _rref_generic(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    tower = field.tower
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] != 1:
            a[r, c:] = tower.mul(tower.inv(a[r, c]), a[r, c:])
        hit = np.flatnonzero(a[:, c])
        hit = hit[hit != r]
        if hit.size:
            f = tower.neg(a[hit, c])
            a[hit, c:] = tower.add(a[hit, c:], tower.mul(f[:, None], a[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: MatrixGF, method: str = "auto") -> RREF:
    """Reduced row echelon form with zero rows dropped.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right, so the result is the canonical form of the row space.
    """
    a = m.entries
    if m.rows == 0 or m.cols == 0:
        return RREF(MatrixGF(m.field, np.zeros((0, m.cols), dtype=DTYPE)), 0, ())
    order = m.field.order
    if method == "auto":
        method = {2: "gf2", 3: "gf3"}.get(order, "generic")
    if method == "gf2":
        if order != 2:
            raise FieldMismatchError("gf2 back end needs GF(2)")
        out, piv = _rref_gf2(a)
    elif method == "gf3":
        if order != 3:
            raise FieldMismatchError("gf3 back end needs GF(3)")
        out, piv = _rref_gf3(a)
    elif method == "generic":
        out, piv = _rref_generic(a, m.field)
    else:
        raise ValueError(f"unknown method {method!r}")
    k = len(piv)
    return RREF(MatrixGF(m.field, out[:k]), k, tuple(piv))


def rank(m: MatrixGF) -> int:
    return rref(m).rank


def kernel_from_rref(red: RREF, cols: int) -> MatrixGF:
    field = red.matrix.field
    pivots = list(red.pivots)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=DTYPE)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            # v[pivot_i] = -R[i, f]
            basis[:, pivots] = field.neg(red.matrix.entries[:, free].T)
    return MatrixGF(field, basis)


def kernel_basis(m: MatrixGF) -> MatrixGF:
    """Rows spanning {v : m v^T = 0}; they are independent."""
    return kernel_from_rref(rref(m), m.cols)


def dual_basis(g: MatrixGF) -> MatrixGF:
    """Generators of the dual code of the row space of ``g``."""
    return kernel_basis(g)


def row_space_equal(a: MatrixGF, b: MatrixGF) -> bool:
    _same_field(a, b)
    if a.cols != b.cols:
        raise ValueError(f"column counts differ: {a.cols} vs {b.cols}")
    return rref(a).matrix == rref(b).matrix


def matmul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError("inner dimensions differ")
    field = a.field
    if field.order == field.characteristic:
        p = field.order
        return MatrixGF(field, (a.entries @ b.entries) % p)
    acc = np.zeros((a.rows, b.cols), dtype=DTYPE)
    for t in range(a.cols):
        acc = field.add(acc, field.mul(a.entries[:, t, None], b.entries[None, t, :]))
    return MatrixGF(field, acc)


def in_row_space(v: np.ndarray, m: MatrixGF) -> bool:
    row = MatrixGF(m.field, np.asarray(v).reshape(1, -1))
    if row.cols != m.cols:
        raise ValueError("vector length differs from column count")
    return rank(m.vstack(row)) == rank(m)
