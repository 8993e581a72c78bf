import json
from fractions import Fraction

import pytest

from waring.apolarity import apolar_kernel
from waring.forms import BinaryForm, ProjectivePoint, is_hyperbolic, make_pointset, sturm_count
from waring.rank import bracket_d7, classify, classify_d5, classify_d6
from waring.witnesses import (
    WitnessError,
    build,
    default_intersection_sets,
    random_intersection_sets,
    verify_witness,
    witness_dminus1,
    witness_generic_span,
    witness_hyperbolic,
    witness_intersection,
)


def from_roots(*roots):
    return BinaryForm.from_roots([ProjectivePoint(r) for r in roots])


def roundtrip(wf):
    return json.loads(wf.dumps())


# -- hyperbolic ---------------------------------------------------------------------


def test_hyperbolic_examples():
    wf = witness_hyperbolic(5, roots=[1, 2, 3, 4, 5])
    assert wf.real_rank == 5 and wf.all_checks_pass
    wf = witness_hyperbolic(3, roots=[0, 1, -1])
    assert wf.form == BinaryForm.from_monomial([0, -1, 0, 1])
    assert wf.real_rank == 3
    with pytest.raises(ValueError):
        witness_hyperbolic(2)


# -- generic span -------------------------------------------------------------------


def test_generic_span_examples():
    wf = witness_generic_span(5, roots=[1, 2, 3])
    assert (wf.complex_rank, wf.real_rank) == (3, 3)
    assert classify_d5(wf.form).label == "3"
    wf = witness_generic_span(7, seed=4)
    assert (wf.complex_rank, wf.real_rank) == (4, 4)
    assert bracket_d7(wf.form).label == "4"
    with pytest.raises(ValueError):
        witness_generic_span(6)


# -- intersection --------------------------------------------------------------------


def test_intersection_d5_example():
    w = make_pointset([ProjectivePoint(0)], [(0, 1)])
    s = make_pointset([ProjectivePoint(r) for r in (1, -1, 2, -2)])
    wf = witness_intersection(5, w, s)
    assert (wf.complex_rank, wf.real_rank) == (3, 4)
    names = [n for n, _ in wf.checks]
    for needed in ("intersection_is_point", "kernels_trivial_up_to_m", "kernel_m_plus_1_is_w", "w_not_hyperbolic", "s_apolar", "s_hyperbolic"):
        assert needed in names
    assert apolar_kernel(wf.form, 3).basis[0].proportional(w.form)
    assert classify_d5(wf.form).label == "4"


def test_intersection_d7_example():
    w = make_pointset([ProjectivePoint(1), ProjectivePoint(2)], [(0, 1)])
    s = make_pointset([ProjectivePoint(r) for r in (0, 3, -1, -2, 5)])
    wf = witness_intersection(7, w, s)
    assert (wf.complex_rank, wf.real_rank) == (4, 5)
    assert bracket_d7(wf.form).label == "5"


def test_intersection_defaults_and_random_sets():
    for d in (5, 7, 9):
        w, s = default_intersection_sets(d)
        assert w.degree == (d + 3) // 2 - 1 and s.degree == (d + 3) // 2
        assert witness_intersection(d).real_rank == (d + 3) // 2
    for seed in range(5):
        w, s = random_intersection_sets(7, seed)
        assert witness_intersection(7, w, s).complex_rank == 4


def test_intersection_errors():
    with pytest.raises(ValueError):
        witness_intersection(6)
    hyp_w = make_pointset([ProjectivePoint(r) for r in (0, 1, 2)])
    s = make_pointset([ProjectivePoint(r) for r in (3, 4, 5, 6)])
    with pytest.raises(WitnessError) as exc:
        witness_intersection(5, hyp_w, s)
    assert exc.value.check == "w_has_nonreal_point"


# -- d - 1 ---------------------------------------------------------------------------


def test_dminus1_d6_example():
    wf = witness_dminus1(6, roots=[1, 2, 3, 4, 5])
    assert wf.real_rank == 5 and wf.all_checks_pass
    cert = classify_d6(wf.form)
    assert cert.exact and cert.real_lo == 5


def test_dminus1_d7_example():
    wf = witness_dminus1(7, seed=3)
    assert wf.real_rank == 6 and wf.certificate.exact and wf.certificate.theorem_backed
    cert = bracket_d7(wf.form)
    assert cert.contains(6)


def test_dminus1_threshold_sanity():
    for d, seed in ((5, 0), (6, 1), (7, 2)):
        wf = witness_dminus1(d, seed)
        g = wf.form
        assert sturm_count(g) <= 2
        assert not is_hyperbolic(g)
        c = Fraction(wf.params["c"])
        assert c > Fraction(wf.params["eta_hat"])


def test_dminus1_rejects_small_degree():
    with pytest.raises(ValueError):
        witness_dminus1(4)
    with pytest.raises(ValueError):
        witness_dminus1(6, roots=[1, 2, 3, 4, 4])


# -- audit -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "kind,d",
    [("hyperbolic", 4), ("hyperbolic", 7), ("generic_span", 5), ("generic_span", 7), ("intersection", 5),
     ("intersection", 9), ("dminus1", 5), ("dminus1", 6), ("dminus1", 7)],
)
def test_witnesses_reverify(kind, d):
    for seed in range(3):
        wf = build(kind, d, seed=seed)
        obj = roundtrip(wf)
        assert verify_witness(obj) == []
        assert classify(wf.form).contains(wf.real_rank)


def test_tampered_coefficient_is_caught():
    obj = roundtrip(witness_intersection(5))
    obj["form"]["coeffs"][2] = str(Fraction(obj["form"]["coeffs"][2]) + Fraction(1, 1000))
    fails = verify_witness(obj)
    assert fails and fails[0] == "form_matches_params"


def test_tampered_rank_is_caught():
    obj = roundtrip(witness_dminus1(6, 2))
    obj["certified"]["real_rank"] = 4
    assert "certified_rank" in verify_witness(obj)
    obj = roundtrip(witness_dminus1(6, 2))
    obj["certificate"]["real_lo"] = 4
    assert verify_witness(obj)


def test_tampered_check_record_is_caught():
    obj = roundtrip(witness_generic_span(5, 1))
    obj["checks"][0]["value"] = False
    assert "recorded_checks" in verify_witness(obj)


def test_verify_rejects_unknown_schema_and_kind():
    obj = roundtrip(witness_hyperbolic(4))
    assert verify_witness(dict(obj, schema=2)) == ["schema"]
    assert verify_witness(dict(obj, kind="mystery")) == ["kind"]
    bad = dict(obj)
    bad["form"] = {"degree": 4}
    assert verify_witness(bad)[0].startswith("parse")


def test_build_unknown_kind():
    with pytest.raises(ValueError):
        build("elliptic", 5)
