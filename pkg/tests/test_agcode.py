import numpy as np
import pytest

from hermcodes import HermitianCurve
from hermcodes.agcode import (
    BudgetExceeded,
    LinearCode,
    brute_force_min_distance,
    build_hermitian_code,
    code_params,
    codewords,
    designed_min_distance,
    dual_code,
    dual_hermitian_s,
    is_codeword,
)
from hermcodes.checks import tower_for
from hermcodes.linalg import MatrixGF, rank


@pytest.fixture(scope="module")
def curve2(t2):
    return HermitianCurve(t2)


def test_table1_parent_dims(curve8):
    c = build_hermitian_code(curve8, 256)
    assert (c.length, c.dimension) == (512, 229)
    c = build_hermitian_code(curve8, 511)
    assert (c.length, c.dimension) == (512, 484)


def test_constant_code(curve2):
    c = build_hermitian_code(curve2, 0)
    assert (c.length, c.dimension) == (8, 1)
    assert (c.generators.entries == 1).all()


@pytest.mark.parametrize("q", [2, 3, 4, 8])
def test_dimension_is_s_plus_1_minus_g(q):
    curve = HermitianCurve(tower_for(q))
    g = curve.genus
    step = 1 if q < 8 else 13
    for s in range(2 * g - 1, q**3, step):
        code = build_hermitian_code(curve, s)
        assert code.dimension == code.generators.rows == s + 1 - g


def test_beyond_length_rank_semantics(curve4):
    # 62 monomials of pole order <= 70, evaluation rank 62 = 64 - dim H(16, 4)
    code = build_hermitian_code(curve4, 70)
    assert code.generators.rows == 62
    assert code.dimension == 62
    assert code_params(curve4, 70)["d"] is None


def test_designed_distance():
    assert designed_min_distance(2, 4) == 4
    assert designed_min_distance(8, 256) == 256
    with pytest.raises(ValueError):
        designed_min_distance(2, 8)
    with pytest.raises(ValueError):
        designed_min_distance(8, 54)


def test_dual_s():
    assert dual_hermitian_s(2, 4) == 4
    assert dual_hermitian_s(8, 8) == 558
    assert dual_hermitian_s(4, 70) == 4
    with pytest.raises(ValueError):
        dual_hermitian_s(2, -1)


@pytest.mark.parametrize("q", [2, 3])
def test_duality_sweep(q):
    curve = HermitianCurve(tower_for(q))
    for s in range(q**3 + q**2 - q - 1):
        d = dual_code(build_hermitian_code(curve, s))
        assert d == build_hermitian_code(curve, dual_hermitian_s(q, s))
        assert d.dimension == 8 * (q == 2) + 27 * (q == 3) - build_hermitian_code(curve, s).dimension


def test_self_dual(curve2):
    c = build_hermitian_code(curve2, 4)
    assert dual_code(c) == c


def test_double_dual(curve4):
    for s in (0, 5, 33, 70):
        c = build_hermitian_code(curve4, s)
        assert dual_code(dual_code(c)) == c


def test_nesting_prefix(curve4):
    small = build_hermitian_code(curve4, 20).generators.entries
    big = build_hermitian_code(curve4, 41).generators.entries
    assert np.array_equal(big[: small.shape[0]], small)


def test_is_codeword(curve4, t4):
    code = build_hermitian_code(curve4, 20)
    for row in code.generators.entries:
        assert is_codeword(code, row)
    assert is_codeword(code, np.zeros(64, dtype=int))
    rng = np.random.default_rng(0)
    found = 0
    while found < 5:
        v = rng.integers(0, 16, 64)
        grown = rank(code.generators.vstack(MatrixGF(t4.top, v)))
        assert is_codeword(code, v) == (grown == code.dimension)
        found += grown > code.dimension
    with pytest.raises(ValueError):
        is_codeword(code, np.zeros(10, dtype=int))


def test_brute_force_distance_basic(t4, curve2):
    rep = LinearCode(MatrixGF(t4.field(2), np.ones((1, 9), dtype=int)))
    assert brute_force_min_distance(rep) == 9
    zero = LinearCode(MatrixGF(t4.field(2), np.zeros((0, 9), dtype=int)))
    with pytest.raises(ValueError):
        brute_force_min_distance(zero)
    assert brute_force_min_distance(build_hermitian_code(curve2, 3)) == 5
    with pytest.raises(BudgetExceeded):
        brute_force_min_distance(build_hermitian_code(curve2, 6), budget=100)


def test_true_distances_q2(curve2):
    """Exhaustive distances of H(4, s); n - s is only a lower bound at s = 1 and 7."""
    got = [brute_force_min_distance(build_hermitian_code(curve2, s)) for s in range(1, 8)]
    assert got == [8, 6, 5, 4, 3, 2, 2]


def test_codewords_enumeration(curve2):
    c = build_hermitian_code(curve2, 3)
    words = codewords(c)
    assert words.shape == (4**3, 8)
    assert len({tuple(w) for w in words}) == 64
    assert all(is_codeword(c, w) for w in words[::5])


def test_code_params(curve8):
    p = code_params(curve8, 256)
    assert (p["n"], p["k"], p["d"]) == (512, 229, 256)
