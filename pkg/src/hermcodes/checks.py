"""Verification routines shared by the command line and the test suite.

Each ``check_*`` returns a list of records with an ``ok`` flag so callers
can print a report and derive an exit status.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agcode import BudgetExceeded, brute_force_min_distance, build_hermitian_code, dual_code, dual_hermitian_s
from .gf import FieldTower, is_prime, make_tower
from .hermitian import HermitianCurve
from .linalg import MatrixGF, kernel_basis, rank, rref
from .subfield import SubfieldRow, main_theorem_sweep, sweep
from .table1 import TABLE1


def prime_power(n: int) -> tuple[int, int]:
    """(p, e) with n = p^e, or ValueError."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    for p in range(2, n + 1):
        if n % p == 0:
            if not is_prime(p):
                break
            e, rest = 0, n
            while rest % p == 0:
                rest //= p
                e += 1
            if rest == 1:
                return p, e
            break
    raise ValueError(f"{n} is not a prime power")


def tower_for(q: int, r: int | None = None) -> FieldTower:
    """The tower GF(r) <= GF(q) <= GF(q^2); r defaults to the prime subfield."""
    p, eq = prime_power(q)
    if r is None:
        r = p
    pr, er = prime_power(r)
    if pr != p or eq % er:
        raise ValueError(f"q = {q} is not a power of r = {r}")
    return make_tower(p, er, eq // er)


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict


def check_table1(jobs: int = 1) -> list[Check]:
    tower = tower_for(8, 2)
    rows = {row.s: row for row in sweep(tower, [s for s, _, _ in TABLE1], jobs=jobs)}
    out = []
    for s, k0, k in TABLE1:
        row = rows[s]
        out.append(
            Check(
                f"table1 s={s}",
                row.k0 == k0 and row.k == k and row.sound,
                {"s": s, "dim_subcode": row.k0, "expected_subcode": k0, "dim_parent": row.k, "expected_parent": k},
            )
        )
    return out


def _row_check(prefix: str, row: SubfieldRow) -> Check:
    return Check(
        f"{prefix} q={row.q} r={row.r} s={row.s}",
        row.passed,
        {"k": row.k, "k0": row.k0, "veron_k0": row.veron_k0, "delsarte": row.delsarte,
         "expected": row.theorem_expected},
    )


def check_theorem(tower: FieldTower, jobs: int = 1) -> list[Check]:
    return [_row_check("theorem", row) for row in main_theorem_sweep(tower, jobs=jobs)]


def check_delsarte(tower: FieldTower, s_values, jobs: int = 1) -> list[Check]:
    return [
        Check(f"delsarte q={row.q} r={row.r} s={row.s}", row.sound,
              {"delsarte": row.delsarte, "k0": row.k0, "veron_k0": row.veron_k0})
        for row in sweep(tower, s_values, jobs=jobs)
    ]


def duality_range(q: int) -> range:
    return range(0, q**3 + q**2 - q - 1)


def check_duality(tower: FieldTower, s_values=None) -> list[Check]:
    """dual(H(q^2, s)) == H(q^2, q^3+q^2-q-2-s)."""
    curve = HermitianCurve(tower)
    out = []
    for s in duality_range(tower.q) if s_values is None else s_values:
        st = dual_hermitian_s(tower.q, s)
        lhs = dual_code(build_hermitian_code(curve, s))
        rhs = build_hermitian_code(curve, st)
        out.append(Check(f"duality q={tower.q} s={s}", lhs == rhs, {"s": s, "s_dual": st}))
    return out


def distance_range(tower: FieldTower, budget: int) -> list[int]:
    """s in (2g-2, q^3) whose code is small enough to enumerate."""
    q = tower.q
    g = q * (q - 1) // 2
    curve = HermitianCurve(tower)
    return [s for s in range(max(0, 2 * g - 1), q**3) if tower.q2 ** curve.riemann_roch_dim(s) <= budget]


def check_distance(tower: FieldTower, s_values=None, budget: int = 1 << 24) -> list[Check]:
    """Exhaustive minimum distance against n - s."""
    curve = HermitianCurve(tower)
    n = tower.q**3
    out = []
    for s in distance_range(tower, budget) if s_values is None else s_values:
        code = build_hermitian_code(curve, s)
        try:
            d = brute_force_min_distance(code, budget)
        except BudgetExceeded as exc:
            out.append(Check(f"distance q={tower.q} s={s}", False, {"error": str(exc)}))
            continue
        out.append(Check(f"distance q={tower.q} s={s}", d == n - s, {"s": s, "d": d, "n_minus_s": n - s}))
    return out


def check_properties(seed: int = 0, trials: int = 100) -> list[Check]:
    """Randomized rank-nullity and double-dual checks over several fields."""
    rng = np.random.default_rng(seed)
    out = []
    for tower, order in ((tower_for(4, 2), 2), (tower_for(4, 2), 4), (tower_for(8, 2), 8),
                         (tower_for(9, 3), 3), (tower_for(9, 3), 81)):
        field = tower.field(order)
        ok = True
        for _ in range(trials):
            rows, cols = rng.integers(1, 12, size=2)
            m = MatrixGF(field, rng.choice(field.elements, size=(rows, cols)))
            red = rref(m)
            ker = kernel_basis(m)
            ok &= red.rank + ker.rows == cols
            ok &= red.rank == rank(m.T())
            ok &= rref(kernel_basis(ker)).matrix == red.matrix
        out.append(Check(f"linalg GF({order}) seed={seed}", bool(ok), {"trials": trials}))
    return out


__all__ = [
    "Check",
    "check_delsarte",
    "check_distance",
    "check_duality",
    "check_properties",
    "check_table1",
    "check_theorem",
    "prime_power",
    "tower_for",
]
