import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from waring import _upoly as up
from waring.linalg import ExactMatrix, det, echelon, nullspace, rank, solve

entries = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def random_matrix(rng, rows, cols, rank_cap=None):
    """Integer-fraction matrix, optionally forced to rank <= rank_cap."""
    if rank_cap is None:
        return [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(cols)] for _ in range(rows)]
    a = random_matrix(rng, rows, rank_cap)
    b = random_matrix(rng, rank_cap, cols)
    return [[sum(a[i][k] * b[k][j] for k in range(rank_cap)) for j in range(cols)] for i in range(rows)]


def sym(rows):
    return sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) for e in r] for r in rows])


@pytest.mark.parametrize("seed", range(40))
def test_rank_det_nullspace_match_sympy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 6), rng.randint(1, 6)
    cap = rng.choice([None, 1, 2, 3])
    rows = random_matrix(rng, n, m, cap)
    assert rank(rows) == sym(rows).rank()
    ns = nullspace(rows, m)
    assert len(ns) == m - rank(rows)
    for v in ns:
        assert all(sum(r[j] * v[j] for j in range(m)) == 0 for r in rows)
    if ns:
        assert rank(ns) == len(ns)
    if n == m:
        assert det(rows) == Fraction(str(sym(rows).det()))


def test_echelon_pivots_first_nonzero_column():
    rows = [[0, 0, 1], [0, 2, 4], [0, 1, 2]]
    ech, piv = echelon(rows)
    assert piv == [1, 2]
    assert len(ech) == 2


def test_nullspace_is_deterministic():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8]]
    assert nullspace(rows, 4) == nullspace(rows, 4)
    assert [v for v in nullspace(rows, 4)] == [[-2, 1, 0, 0], [-3, 0, 1, 0], [-4, 0, 0, 1]]


def test_exact_matrix_wrapper():
    m = ExactMatrix.from_rows([[1, 0], [0, 1]])
    assert m.rank() == 2 and m.nullspace() == []
    assert m.tolist() == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_solve():
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(ValueError):
        solve([[1, 1], [2, 2]], [1, 2])
    with pytest.raises(ValueError):
        solve([[1, 1], [2, 2]], [1, 3])


def test_empty_and_zero_matrices():
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0
    assert len(nullspace([[0, 0]], 2)) == 2
    assert det([[0, 1], [1, 0]]) == -1


# -- univariate helpers --------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(st.lists(entries, min_size=1, max_size=6), st.lists(entries, min_size=1, max_size=5))
def test_divmod_identity(p, q):
    q = up.trim(q)
    if not q:
        return
    quo, r = up.divmod_poly(up.trim(p), q)
    assert up.add(up.mul(quo, q), r) == up.trim(p)
    assert up.degree(r) < up.degree(q)


@settings(max_examples=60, deadline=None)
@given(st.lists(entries, min_size=2, max_size=6), st.lists(entries, min_size=2, max_size=6))
def test_gcd_divides_both(p, q):
    p, q = up.trim(p), up.trim(q)
    if not p or not q:
        return
    g = up.poly_gcd(p, q)
    assert up.rem(p, g) == [] and up.rem(q, g) == []


def test_interpolate_recovers_polynomial():
    p = [Fraction(3), Fraction(-1, 2), 0, Fraction(7, 3)]
    xs = [Fraction(i) for i in range(4)]
    assert up.interpolate(xs, [up.evaluate(p, x) for x in xs]) == p


def test_cauchy_bound_is_strict():
    p = up.mul([-3, 1], [5, 1])
    b = up.cauchy_bound(p)
    assert b > 5


def test_squarefree_part():
    p = up.mul(up.mul([-1, 1], [-1, 1]), [2, 1])
    assert up.monic(up.squarefree_part(p)) == up.monic(up.mul([-1, 1], [2, 1]))
    assert not up.is_squarefree(p)
