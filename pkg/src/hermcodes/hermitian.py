"""The Hermitian curve y^q + y = x^(q+1) over GF(q^2).

Rational affine points, pole orders at the point at infinity, and the
monomial basis of L(s P_inf).  The point at infinity itself never appears
as an object; it is only seen through pole orders.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .gf import DTYPE, FieldElement, FieldTower


def pole_order(q: int, i: int, j: int) -> int:
    """Pole order of x^i y^j at infinity: x has a pole of order q, y of order q+1."""
    if i < 0 or j < 0:
        raise ValueError("exponents must be non-negative")
    return q * i + (q + 1) * j


class Monomial(NamedTuple):
    i: int
    j: int
    pole_order: int


@dataclass(frozen=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement
    index: int


class HermitianCurve:
    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.q = tower.q
        self.genus = self.q * (self.q - 1) // 2
        self.n_affine = self.q**3

    def __repr__(self) -> str:
        return f"HermitianCurve(q={self.q})"

    @cached_property
    def _coords(self) -> tuple[np.ndarray, np.ndarray]:
        t = self.tower
        q = self.q
        allv = np.arange(t.q2, dtype=DTYPE)
        # y^q + y for every y, x^(q+1) for every x
        lhs = t.add(t.power(allv, q), allv)
        rhs = t.power(allv, q + 1)
        by_value = np.argsort(lhs, kind="stable")
        lo = np.searchsorted(lhs[by_value], rhs, side="left")
        hi = np.searchsorted(lhs[by_value], rhs, side="right")
        x_arr = np.repeat(allv, hi - lo)
        # stable sort keeps each fibre in increasing y
        y_arr = np.concatenate([by_value[a:b] for a, b in zip(lo, hi)]).astype(DTYPE)
        x_arr.setflags(write=False)
        y_arr.setflags(write=False)
        return x_arr, y_arr

    @property
    def xs(self) -> np.ndarray:
        """x-coordinates of the affine points, canonical order."""
        return self._coords[0]

    @property
    def ys(self) -> np.ndarray:
        return self._coords[1]

    def affine_points(self) -> list[AffinePoint]:
        """All q^3 rational affine points, sorted by (x encoding, y encoding)."""
        t = self.tower
        return [
            AffinePoint(t.element(int(x)), t.element(int(y)), k)
            for k, (x, y) in enumerate(zip(self.xs, self.ys))
        ]

    def on_curve(self, x: int, y: int) -> bool:
        t = self.tower
        return int(t.add(t.power(y, self.q), y)) == int(t.power(x, self.q + 1))

    def monomial_basis(self, s: int) -> list[Monomial]:
        """x^i y^j with i < q^2, j < q and pole order <= s, by increasing pole order.

        For s < q^3 this is a basis of L(s P_inf).  Beyond that the cap on i
        keeps only monomials whose evaluations are not repeats (x^(q^2) = x
        on rational points), which is what spans the evaluation code.
        """
        if s < 0:
            raise ValueError("s must be non-negative")
        q = self.q
        mons = [
            Monomial(i, j, pole_order(q, i, j))
            for j in range(q)
            for i in range(q * q)
            if pole_order(q, i, j) <= s
        ]
        mons.sort(key=lambda mon: mon.pole_order)
        return mons

    def riemann_roch_dim(self, s: int) -> int:
        """Size of :meth:`monomial_basis`; equals l(s P_inf) for s < q^3."""
        return len(self.monomial_basis(s))

    def evaluate_monomial(self, mon: Monomial | tuple[int, int], point: AffinePoint) -> FieldElement:
        i, j = mon[0], mon[1]
        return point.x**i * point.y**j

    def evaluation_matrix(self, monomials: list[Monomial]) -> np.ndarray:
        """Row k holds monomial k evaluated at every affine point."""
        t = self.tower
        out = np.empty((len(monomials), self.n_affine), dtype=DTYPE)
        for row, mon in enumerate(monomials):
            out[row] = t.mul(t.power(self.xs, mon.i), t.power(self.ys, mon.j))
        return out

    def points_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# q={self.q} modulus={','.join(map(str, self.tower.modulus))}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "x", "y"])
        for k, (x, y) in enumerate(zip(self.xs, self.ys)):
            w.writerow([k, int(x), int(y)])
        return buf.getvalue()
