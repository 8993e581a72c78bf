import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waring.apolarity import (
    FormSubspace,
    annihilated_by,
    annihilator_space,
    apolar_dims,
    apolar_kernel,
    catalecticant,
    contract,
    kernel,
)
from waring.forms import (
    BinaryForm,
    PointSetError,
    ProjectivePoint,
    make_pointset,
    random_distinct_rationals,
    random_form,
)
from waring.linalg import ExactMatrix


def mono(*coeffs):
    return BinaryForm.from_monomial(coeffs)


def test_catalecticant_examples():
    assert catalecticant(mono(1, 0, 1), 1).tolist() == [[1, 0], [0, 1]]
    x2y = mono(0, 0, 1, 0)
    assert catalecticant(x2y, 2).tolist() == [[0, 0, Fraction(1, 3)], [0, Fraction(1, 3), 0]]
    for r in range(1, 7):
        assert catalecticant(BinaryForm.power(3, -2, 6), r).rank() == 1


def test_catalecticant_range():
    with pytest.raises(ValueError):
        catalecticant(mono(1, 0, 1), 3)
    with pytest.raises(ValueError):
        catalecticant(mono(1, 0, 1), 0)


def test_kernel_examples():
    assert kernel(ExactMatrix.from_rows([[1, 0], [0, 1]])).dim == 0
    # (x - 2y)^3 is the power of the point (1 : -2); its apolar line vanishes there
    k = apolar_kernel(BinaryForm.power(1, -2, 3), 1)
    assert k.dim == 1
    h = k.basis[0]
    assert h(1, -2) == 0
    assert h.proportional(mono(1, 2))  # 2x + y
    k = apolar_kernel(mono(0, 0, 1, 0), 2)
    assert k.dim == 1 and k.basis[0].proportional(mono(1, 0, 0))  # y^2, double root at (1:0)


def test_contract_examples():
    assert contract(mono(1, 2), BinaryForm.power(1, -2, 3)).is_zero
    c = contract(mono(1, 0, 0), mono(0, 0, 1, 0))
    assert c.degree == 1 and c.is_zero
    h, f = random_form(4, seed=5), random_form(4, seed=6)
    c = contract(h, f)
    assert c.degree == 0
    assert c.coeffs_norm[0] == sum(b * a for b, a in zip(h.monomial, f.coeffs_norm)) != 0
    with pytest.raises(ValueError):
        contract(random_form(5, seed=1), random_form(4, seed=1))


def test_annihilator_examples():
    sp = annihilator_space(make_pointset([ProjectivePoint(1)]), 3)
    assert sp.dim == 1 and sp.basis[0].coeffs_norm == (1, 1, 1, 1)
    sp = annihilator_space(make_pointset([ProjectivePoint(1), ProjectivePoint(-1)]), 4)
    assert sp.dim == 2
    assert sp.contains(BinaryForm.power(1, 1, 4)) and sp.contains(BinaryForm.power(1, -1, 4))
    w = make_pointset([ProjectivePoint(0)], [(0, 1)])
    sp = annihilator_space(w, 5)
    assert sp.dim == 3
    assert all(contract(w.form, b).is_zero for b in sp.basis)
    # the y^5 direction is the real point (0 : 1); the other two are real combinations
    assert sp.contains(BinaryForm.power(0, 1, 5))


def test_annihilator_rejects_repeated_roots():
    with pytest.raises(PointSetError):
        annihilator_space(mono(0, 0, 1), 4)
    with pytest.raises(ValueError):
        annihilator_space(make_pointset([ProjectivePoint(1), ProjectivePoint(2)]), 1)


def test_apolar_kernel_examples():
    f = random_form(5, seed=42)
    assert apolar_kernel(f, 2).dim == 0
    assert apolar_kernel(f, 3).dim == 1
    k = apolar_kernel(BinaryForm.power(1, 1, 5), 3)
    assert k.dim == 3 and all(h(1, 1) == 0 for h in k.basis)


@pytest.mark.parametrize("seed", range(40))
def test_root_correspondence(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 8)
    s = rng.randint(1, min(5, d))
    pts = random_distinct_rationals(rng, s)
    if rng.random() < 0.3:
        pts[0] = None  # include the point at infinity
    points = [ProjectivePoint(1, 0) if p is None else ProjectivePoint(p) for p in pts]
    f = BinaryForm.zero(d)
    for p in points:
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        f = f + c * p.power(d)
    w = BinaryForm.from_roots(points)
    assert contract(w, f).is_zero
    assert annihilator_space(w, d).contains(f)


@pytest.mark.parametrize("seed", range(20))
def test_annihilator_dimension(seed):
    rng = random.Random(seed)
    d = rng.randint(3, 9)
    k = rng.randint(1, d)
    nquads = rng.randint(0, k // 2)
    reals = random_distinct_rationals(rng, k - 2 * nquads)
    quads = []
    while len(quads) < nquads:
        b, c = rng.randint(-3, 3), rng.randint(3, 9)
        if (b, c) not in quads and b * b < 4 * c:
            quads.append((b, c))
    w = make_pointset([ProjectivePoint(r) for r in reals], quads)
    assert annihilator_space(w, d).dim == w.degree


@pytest.mark.parametrize("d", range(2, 10))
def test_kernel_dimension_bound(d):
    for seed in range(10):
        dims = apolar_dims(random_form(d, seed=seed))
        assert dims == [0] + [max(0, 2 * r - d) for r in range(1, d + 1)]
    # special forms exceed the generic value but never go below it
    f = BinaryForm.power(1, 2, d) + BinaryForm.power(1, -1, d)
    for r in range(1, d + 1):
        assert apolar_kernel(f, r).dim >= max(0, 2 * r - d)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 6), st.integers(0, 10**6), st.fractions(-3, 3, max_denominator=5))
def test_contract_bilinear(r, extra, seed, lam):
    d = r + extra
    h1, h2 = random_form(r, seed=seed), random_form(r, seed=seed + 1)
    f1, f2 = random_form(d, seed=seed + 2), random_form(d, seed=seed + 3)
    assert contract(h1 + lam * h2, f1) == contract(h1, f1) + lam * contract(h2, f1)
    assert contract(h1, f1 + lam * f2) == contract(h1, f1) + lam * contract(h1, f2)


def test_subspace_validation():
    with pytest.raises(ValueError):
        FormSubspace(2, (mono(1, 0, 1), mono(2, 0, 2)))
    with pytest.raises(ValueError):
        FormSubspace(2, (mono(1, 0),))
    sp = annihilated_by([mono(-1, 1)], 3)
    assert sp.combination([Fraction(2)]).coeffs_norm == tuple(2 * c for c in sp.basis[0].coeffs_norm)
