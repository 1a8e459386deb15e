"""One-point Hermitian codes H(q^2, s) and generic linear-code plumbing."""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from functools import cached_property

import numpy as np

from .gf import DTYPE, Field
from .hermitian import HermitianCurve
from .linalg import RREF, MatrixGF, kernel_from_rref, rref

DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the caller's budget."""


@dataclass(eq=False)
class LinearCode:
    """Row space of ``generators``.

    Generators need not be independent; pass ``independent=True`` only when
    they are known to be (e.g. a kernel basis) to skip an elimination.
    """

    generators: MatrixGF
    provenance: dict = dc_field(default_factory=dict)
    independent: bool = False
    cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> Field:
        return self.generators.field

    @property
    def length(self) -> int:
        return self.generators.cols

    @cached_property
    def echelon(self) -> RREF:
        return rref(self.generators)

    @property
    def dimension(self) -> int:
        if self.independent:
            return self.generators.rows
        return self.echelon.rank

    @cached_property
    def parity_check(self) -> MatrixGF:
        return kernel_from_rref(self.echelon, self.length)

    def canonical(self) -> MatrixGF:
        return self.echelon.matrix

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.length == other.length
            and self.canonical() == other.canonical()
        )

    def __repr__(self) -> str:
        return f"LinearCode({self.field}, n={self.length}, k={self.dimension}, {self.provenance})"

    def __contains__(self, v) -> bool:
        return is_codeword(self, v)


def build_hermitian_code(curve: HermitianCurve, s: int) -> LinearCode:
    """H(q^2, s): evaluations of the monomial basis of L(s P_inf) at all affine points.

    Rows follow strictly increasing pole order, so H(q^2, s) generators are a
    prefix of H(q^2, s') generators whenever s <= s'.
    """
    mons = curve.monomial_basis(s)
    g = MatrixGF(curve.tower.top, curve.evaluation_matrix(mons))
    return LinearCode(g, {"kind": "hermitian", "q": curve.q, "s": s})


def designed_min_distance(q: int, s: int) -> int:
    g = q * (q - 1) // 2
    n = q**3
    if not 2 * g - 2 < s < n:
        raise ValueError(f"designed distance n - s is only claimed for {2 * g - 2} < s < {n}")
    return n - s


def dual_hermitian_s(q: int, s: int) -> int:
    if s < 0:
        raise ValueError("s must be non-negative")
    return q**3 + q**2 - q - 2 - s


def dual_code(code: LinearCode) -> LinearCode:
    if "dual" not in code.cache:
        prov = {"kind": "dual", "of": dict(code.provenance)}
        code.cache["dual"] = LinearCode(code.parity_check, prov, independent=True)
    return code.cache["dual"]


def is_codeword(code: LinearCode, v) -> bool:
    """Membership through the parity checks: H v^T = 0."""
    v = np.asarray(v, dtype=DTYPE).ravel()
    if v.size != code.length:
        raise ValueError(f"vector of length {v.size} for a length-{code.length} code")
    code.field.check(v)
    h = code.parity_check.entries
    if h.shape[0] == 0:
        return True
    f = code.field
    acc = np.zeros(h.shape[0], dtype=DTYPE)
    for j in np.flatnonzero(v):
        acc = f.add(acc, f.mul(h[:, j], v[j]))
    return not acc.any()


def _encode_all(field: Field, g: np.ndarray, chunk: int = 1 << 14):
    """Yield codewords for every message vector, in chunks."""
    k = g.shape[0]
    elems = field.elements
    total = len(elems) ** k
    idx = np.arange(total, dtype=np.int64)
    for start in range(0, total, chunk):
        block = idx[start : start + chunk]
        acc = np.zeros((block.size, g.shape[1]), dtype=DTYPE)
        rem = block.copy()
        for row in range(k):
            rem, digit = np.divmod(rem, len(elems))
            coef = elems[digit]
            acc = field.add(acc, field.mul(coef[:, None], g[row][None, :]))
        yield acc


def codewords(code: LinearCode, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All codewords, one per row; refuses when |F|^k exceeds ``budget``."""
    g = code.canonical().entries
    k = g.shape[0]
    if code.field.order**k > budget:
        raise BudgetExceeded(f"{code.field.order}^{k} codewords exceed budget {budget}")
    return np.concatenate(list(_encode_all(code.field, g)), axis=0)


def brute_force_min_distance(code: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum weight over all nonzero codewords by exhaustive enumeration."""
    g = code.canonical().entries
    k = g.shape[0]
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    if code.field.order**k > budget:
        raise BudgetExceeded(f"{code.field.order}^{k} messages exceed budget {budget}")
    best = code.length
    for block in _encode_all(code.field, g):
        w = np.count_nonzero(block, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def code_params(curve: HermitianCurve, s: int) -> dict:
    """n, k and (inside its range) the designed distance of H(q^2, s)."""
    code = build_hermitian_code(curve, s)
    out = {"q": curve.q, "s": s, "n": code.length, "k": code.dimension}
    try:
        out["d"] = designed_min_distance(curve.q, s)
    except ValueError:
        out["d"] = None
    out["tower"] = curve.tower.describe()
    return out


__all__ = [
    "BudgetExceeded",
    "LinearCode",
    "brute_force_min_distance",
    "build_hermitian_code",
    "code_params",
    "codewords",
    "designed_min_distance",
    "dual_code",
    "dual_hermitian_s",
    "is_codeword",
]
