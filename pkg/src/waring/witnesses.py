"""Certified constructions of forms with a prescribed real rank.

Four families:

``hyperbolic``
    a product of ``d`` distinct real linear forms, real rank ``d``.
``generic_span``
    (odd ``d = 2m+1``) a point in the span of ``m+1`` real points of the
    rational normal curve and in no smaller one: real = complex rank ``m+1``.
``intersection``
    (odd ``d``) the unique point where the span of a conjugation-stable set
    ``W`` of ``m+1`` points (some not real) meets the span of ``m+2`` real
    points ``S``: complex rank ``m+1``, real rank ``m+2``.
``dminus1``
    ``g = sum c_i L_i^d + c*y^d`` where ``f = sum c_i L_i^(d-1)`` is
    hyperbolic and ``c`` is large enough that ``g`` has at most two real
    roots: real rank ``d-1``.

Every hypothesis is recorded as a named boolean and re-checked by
:func:`verify_witness` from the JSON alone.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import _upoly as up
from .apolarity import annihilated_by, apolar_kernel, contract
from .forms import (
    BinaryForm,
    PointSetForm,
    ProjectivePoint,
    discriminant,
    is_hyperbolic,
    is_squarefree,
    make_pointset,
    random_distinct_rationals,
    sturm_count,
)
from .hypdecide import search_witness
from .linalg import solve
from .rank import (
    APOLAR_WITNESS,
    HYPERBOLIC_INPUT,
    KERNEL_TRIVIAL,
    NO_HYPERBOLIC,
    NONHYPERBOLIC_SQUAREFREE,
    THEOREM,
    ComplexRankEvidence,
    Evidence,
    RankCertificate,
    complex_rank,
)

SCHEMA = 1
KINDS = ("hyperbolic", "generic_span", "intersection", "dminus1")


class WitnessError(RuntimeError):
    """A construction hypothesis failed; ``check`` names it."""

    def __init__(self, check: str, message: str = ""):
        super().__init__(message or f"hypothesis check failed: {check}")
        self.check = check


@dataclass(frozen=True)
class WitnessForm:
    kind: str
    form: BinaryForm
    complex_rank: int
    real_rank: int
    checks: Tuple[Tuple[str, bool], ...]
    params: Dict[str, object]
    certificate: RankCertificate
    extra_witness: Optional[BinaryForm] = None

    @property
    def all_checks_pass(self) -> bool:
        return all(v for _, v in self.checks)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "kind": self.kind,
            "form": self.form.to_json(),
            "certified": {"complex_rank": self.complex_rank, "real_rank": self.real_rank},
            "checks": [{"name": n, "value": v} for n, v in self.checks],
            "params": self.params,
            "certificate": self.certificate.to_json(),
        }
        if self.extra_witness is not None:
            out["upper_bound_witness"] = self.extra_witness.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _fracs(vals: Sequence) -> List[str]:
    return [str(Fraction(v)) for v in vals]


def _finish(kind, form, csr, rsr, checks, params, cert, extra=None) -> WitnessForm:
    wf = WitnessForm(kind, form, csr, rsr, tuple(checks), params, cert, extra)
    for name, ok in checks:
        if not ok:
            raise WitnessError(name)
    return wf


def _complex(form: BinaryForm) -> Tuple[int, ComplexRankEvidence]:
    return complex_rank(form)


# -- hyperbolic ----------------------------------------------------------------


def _hyperbolic_form(roots: Sequence[Fraction]) -> BinaryForm:
    return BinaryForm.from_roots(ProjectivePoint(r) for r in roots)


def _hyperbolic_checks(form: BinaryForm, params: dict) -> List[Tuple[str, bool]]:
    roots = [Fraction(r) for r in params["roots"]]
    return [
        ("form_matches_params", form == _hyperbolic_form(roots)),
        ("degree_at_least_3", form.degree >= 3),
        ("hyperbolic", is_hyperbolic(form)),
    ]


def witness_hyperbolic(d: int, seed: int = 0, roots: Optional[Sequence] = None) -> WitnessForm:
    if d < 3:
        raise ValueError("hyperbolic witnesses need d >= 3")
    if roots is None:
        roots = random_distinct_rationals(random.Random(seed), d)
    roots = [Fraction(r) for r in roots]
    if len(roots) != d or len(set(roots)) != d:
        raise ValueError(f"need {d} distinct roots")
    form = _hyperbolic_form(roots)
    params = {"roots": _fracs(roots), "seed": seed}
    csr, cev = _complex(form)
    ev = [Evidence(HYPERBOLIC_INPUT, d)]
    cert = RankCertificate(d, csr, cev, d, d, tuple(ev), tuple(ev), "witness_hyperbolic")
    return _finish("hyperbolic", form, csr, d, _hyperbolic_checks(form, params), params, cert)


# -- generic span ----------------------------------------------------------------


def _odd_degree(d: int) -> int:
    if d < 5 or d % 2 == 0:
        raise ValueError("degree must be odd and at least 5")
    return (d - 1) // 2


def _span_form(roots: Sequence[Fraction], weights: Sequence[Fraction], d: int) -> BinaryForm:
    out = BinaryForm.zero(d)
    for rho, c in zip(roots, weights):
        out = out + c * ProjectivePoint(rho).power(d)
    return out


def _generic_span_checks(form: BinaryForm, params: dict) -> List[Tuple[str, bool]]:
    d = form.degree
    m = (d - 1) // 2
    roots = [Fraction(r) for r in params["s_roots"]]
    weights = [Fraction(c) for c in params["weights"]]
    s = _hyperbolic_form(roots)
    return [
        ("form_matches_params", form == _span_form(roots, weights, d)),
        ("s_degree_m_plus_1", s.degree == m + 1),
        ("kernels_trivial_up_to_m", all(apolar_kernel(form, r).dim == 0 for r in range(1, m + 1))),
        ("s_apolar", contract(s, form).is_zero),
        ("s_hyperbolic", is_hyperbolic(s)),
        ("form_squarefree", is_squarefree(form)),
    ]


def witness_generic_span(d: int, seed: int = 0, roots: Optional[Sequence] = None, attempts: int = 10) -> WitnessForm:
    m = _odd_degree(d)
    rng = random.Random(seed)
    last = None
    for _ in range(attempts):
        rs = [Fraction(r) for r in roots] if roots is not None else random_distinct_rationals(rng, m + 1)
        if len(rs) != m + 1:
            raise ValueError(f"need {m + 1} roots")
        weights = [Fraction(rng.choice((-1, 1)) * rng.randint(4, 16), 8) for _ in rs]
        form = _span_form(rs, weights, d)
        params = {"s_roots": _fracs(rs), "weights": _fracs(weights), "seed": seed}
        checks = _generic_span_checks(form, params)
        failed = [n for n, ok in checks if not ok]
        if failed:
            last = failed[0]
            continue
        s = _hyperbolic_form(rs)
        csr, cev = _complex(form)
        ev_lo = [Evidence(KERNEL_TRIVIAL, r) for r in range(1, m + 1)]
        ev_hi = [Evidence(APOLAR_WITNESS, m + 1, s, "exact")]
        cert = RankCertificate(d, csr, cev, m + 1, m + 1, tuple(ev_lo), tuple(ev_hi), "witness_generic_span")
        return _finish("generic_span", form, m + 1, m + 1, checks, params, cert)
    raise WitnessError(last or "unknown", f"generic span construction failed {attempts} times ({last})")


# -- intersection ------------------------------------------------------------------


def default_intersection_sets(d: int) -> Tuple[PointSetForm, PointSetForm]:
    """``w``: real roots ``0, 1/2, .., 1/(m-1)`` times ``x^2 + y^2``; ``s``: roots ``1, -1, 2, -2, ..``."""
    m = _odd_degree(d)
    w_roots = [ProjectivePoint(0)] + [ProjectivePoint(Fraction(1, k)) for k in range(2, m)]
    w = make_pointset(w_roots, [(0, 1)])
    s_vals = []
    k = 1
    while len(s_vals) < m + 2:
        s_vals.extend([k, -k])
        k += 1
    s = make_pointset([ProjectivePoint(v) for v in s_vals[: m + 2]])
    return w, s


def random_intersection_sets(d: int, seed: int) -> Tuple[PointSetForm, PointSetForm]:
    m = _odd_degree(d)
    rng = random.Random(seed)
    vals = random_distinct_rationals(rng, (m - 1) + (m + 2))
    b = Fraction(rng.randint(-8, 8), 2)
    c = b * b / 4 + Fraction(rng.randint(1, 16), 4)
    w = make_pointset([ProjectivePoint(v) for v in vals[: m - 1]], [(b, c)])
    s = make_pointset([ProjectivePoint(v) for v in vals[m - 1:]])
    return w, s


def _as_form(p) -> BinaryForm:
    return p.form if isinstance(p, PointSetForm) else p


def _intersection_checks(form: BinaryForm, params: dict) -> List[Tuple[str, bool]]:
    d = form.degree
    m = (d - 1) // 2
    w = BinaryForm.from_json(params["w"])
    s = BinaryForm.from_json(params["s"])
    line = annihilated_by([w, s], d)
    k_next = apolar_kernel(form, m + 1)
    return [
        ("form_matches_params", line.dim == 1 and line.contains(form) and not form.is_zero),
        ("intersection_is_point", line.dim == 1),
        ("kernels_trivial_up_to_m", all(apolar_kernel(form, r).dim == 0 for r in range(1, m + 1))),
        ("kernel_m_plus_1_is_w", k_next.dim == 1 and k_next.contains(w)),
        ("w_not_hyperbolic", not is_hyperbolic(w)),
        ("s_apolar", contract(s, form).is_zero),
        ("s_hyperbolic", is_hyperbolic(s)),
    ]


def witness_intersection(d: int, w=None, s=None, seed: Optional[int] = None) -> WitnessForm:
    """The point ``<W> ∩ <S>`` with certified (complex, real) rank ``(m+1, m+2)``."""
    m = _odd_degree(d)
    if w is None and s is None:
        w, s = default_intersection_sets(d) if seed is None else random_intersection_sets(d, seed)
    if w is None or s is None:
        raise ValueError("give both w and s, or neither")
    wf, sf = _as_form(w), _as_form(s)
    if wf.degree != m + 1 or sf.degree != m + 2:
        raise ValueError(f"need deg w = {m + 1} and deg s = {m + 2}")
    if not is_squarefree(wf) or not is_squarefree(sf):
        raise WitnessError("squarefree_inputs")
    if is_hyperbolic(wf):
        raise WitnessError("w_has_nonreal_point", "w must have at least one non-real root")
    if up.degree(up.poly_gcd(wf.dehomogenize(), sf.dehomogenize())) > 0 or (
        wf.infinity_multiplicity() and sf.infinity_multiplicity()
    ):
        raise WitnessError("w_s_disjoint", "w and s share a root")
    line = annihilated_by([wf, sf], d)
    if line.dim != 1:
        raise WitnessError("intersection_is_point")
    form = line.basis[0].primitive()
    params = {"w": wf.to_json(), "s": sf.to_json(), "seed": seed}
    checks = _intersection_checks(form, params)
    cev = ComplexRankEvidence(m + 1, 1, wf)
    ev_lo = [Evidence(KERNEL_TRIVIAL, r) for r in range(1, m + 1)] + [Evidence(NO_HYPERBOLIC, m + 1, detail="dim1")]
    ev_hi = [Evidence(APOLAR_WITNESS, m + 2, sf, "exact")]
    cert = RankCertificate(d, m + 1, cev, m + 2, m + 2, tuple(ev_lo), tuple(ev_hi), "witness_intersection")
    return _finish("intersection", form, m + 1, m + 2, checks, params, cert)


# -- rank d - 1 -------------------------------------------------------------------


def _sum_of_powers(c: Sequence[Fraction], rs: Sequence[Fraction], d: int) -> BinaryForm:
    """``sum_i c_i (x - r_i y)^d``."""
    out = BinaryForm.zero(d)
    for ci, ri in zip(c, rs):
        out = out + ci * BinaryForm.power(1, -ri, d)
    return out


def _last_support_point(f: BinaryForm, rs: Sequence[Fraction]) -> Optional[Fraction]:
    """``r`` such that ``f`` lies in the span of ``(x - r_i y)^n`` for ``rs + [r]``."""
    # x - r y is the Veronese image of (1 : -r); the form vanishing there is r x + y
    w0 = BinaryForm.from_monomial([1])
    for ri in rs:
        w0 = w0 * BinaryForm.from_monomial([1, ri])
    ax = contract(w0 * BinaryForm.from_monomial([0, 1]), f).coeffs_norm[0]
    ay = contract(w0 * BinaryForm.from_monomial([1, 0]), f).coeffs_norm[0]
    if ax == 0:
        return None
    return -ay / ax


def _window(u: up.Poly) -> Tuple[Fraction, Fraction]:
    """``T`` outside of which ``u`` is monotone, and ``eta >= max |u|`` on ``[-T, T]``."""
    t = 1 + up.cauchy_bound(up.derivative(u))
    eta = sum((abs(a) * t**i for i, a in enumerate(u)), Fraction(0))
    return t, eta


def _dminus1_checks(form: BinaryForm, params: dict) -> List[Tuple[str, bool]]:
    d = form.degree
    f_roots = [Fraction(r) for r in params["f_roots"]]
    rs = [Fraction(r) for r in params["L_roots"]]
    cs = [Fraction(c) for c in params["L_coeffs"]]
    c = Fraction(params["c"])
    t = Fraction(params["T"])
    eta = Fraction(params["eta_hat"])
    f = _hyperbolic_form(f_roots)
    big = _sum_of_powers(cs, rs, d)
    u = big.dehomogenize()
    du = up.derivative(u)
    uc = up.add(u, [c])
    t_ref, eta_ref = _window(u)
    x_form = BinaryForm.from_monomial([0, 1])
    return [
        ("form_matches_params", form == big + c * BinaryForm.power(0, 1, d)),
        ("degree_at_least_5", d >= 5),
        ("f_hyperbolic", f.degree == d - 1 and is_hyperbolic(f)),
        ("f_decomposition_exact", _sum_of_powers(cs, rs, d - 1) == f and all(cs) and len(set(rs)) == d - 1),
        ("no_L_proportional_to_R", len(rs) == d - 1),  # every L_i = x - r_i y has x-coefficient 1
        ("projection_from_R_gives_f", contract(x_form, form) == f),
        ("threshold_recomputed", t == t_ref and eta == eta_ref and c > eta),
        ("u_monotone_outside_window", up.count_real_roots(du, None, -t) == 0 and up.count_real_roots(du, t, None) == 0 and up.evaluate(du, t) != 0),
        ("no_roots_in_window", up.count_real_roots(uc, -t, t) == 0 and up.evaluate(uc, -t) != 0),
        ("at_most_two_real_roots", sturm_count(uc) <= 2),
        ("g_squarefree", discriminant(form) != 0),
        ("g_not_hyperbolic", not is_hyperbolic(form)),
    ]


def witness_dminus1(
    d: int,
    seed: int = 0,
    roots: Optional[Sequence] = None,
    search_trials: int = 200,
    retries: int = 20,
) -> WitnessForm:
    """``g = sum c_i L_i^d + c y^d`` with certified real rank ``d - 1``.

    ``roots`` are the roots of the hyperbolic degree ``d-1`` form ``f``
    (default: seeded).  The support ``L_i = x - r_i y`` of ``f`` is chosen
    with rational ``r_i``; ``c`` is the least integer above the bound on
    ``|u|`` over the window where ``u`` can turn.
    """
    if d < 5:
        raise ValueError("dminus1 witnesses need d >= 5")
    n = d - 1
    rng = random.Random(seed)
    f_roots = [Fraction(r) for r in roots] if roots is not None else random_distinct_rationals(rng, n, bound=6, denom=2)
    if len(f_roots) != n or len(set(f_roots)) != n:
        raise ValueError(f"need {n} distinct roots for f")
    f = _hyperbolic_form(f_roots)
    for _ in range(retries):
        rs = random_distinct_rationals(rng, n - 1, bound=6, denom=2)
        last = _last_support_point(f, rs)
        if last is None or last in rs:
            continue
        rs.append(last)
        rows = [[BinaryForm.power(1, -r, n).monomial[k] for r in rs] for k in range(n + 1)]
        try:
            cs = solve(rows, f.monomial)
        except ValueError:
            continue
        if all(cs):
            break
    else:
        raise WitnessError("f_decomposition_exact", "could not find a rational support for f")

    big = _sum_of_powers(cs, rs, d)
    t, eta = _window(big.dehomogenize())
    c = Fraction(floor(eta) + 1)
    y_pow = BinaryForm.power(0, 1, d)
    for _ in range(retries):
        g = big + c * y_pow
        if discriminant(g) != 0:
            break
        c += 1
    else:
        raise WitnessError("g_squarefree", "retries exhausted on the discriminant check")

    params = {
        "f_roots": _fracs(f_roots),
        "L_roots": _fracs(rs),
        "L_coeffs": _fracs(cs),
        "c": str(c),
        "T": str(t),
        "eta_hat": str(eta),
        "seed": seed,
    }
    checks = _dminus1_checks(g, params)
    csr, cev = _complex(g)
    extra = None
    if search_trials:
        dec = search_witness(apolar_kernel(g, d - 1), search_trials, seed)
        if dec.exists:
            extra = dec.witness.primitive()
    ev_lo = [Evidence(THEOREM, d - 1, detail="projection_from_curve_point")]
    ev_hi = [Evidence(NONHYPERBOLIC_SQUAREFREE, d - 1)]
    if extra is not None:
        ev_hi.append(Evidence(APOLAR_WITNESS, d - 1, extra, "search_only"))
    cert = RankCertificate(d, csr, cev, d - 1, d - 1, tuple(ev_lo), tuple(ev_hi), "witness_dminus1")
    return _finish("dminus1", g, csr, d - 1, checks, params, cert, extra)


# -- audit -----------------------------------------------------------------------

_CHECKS: Dict[str, Callable[[BinaryForm, dict], List[Tuple[str, bool]]]] = {
    "hyperbolic": _hyperbolic_checks,
    "generic_span": _generic_span_checks,
    "intersection": _intersection_checks,
    "dminus1": _dminus1_checks,
}


def _expected_real_rank(kind: str, d: int) -> int:
    if kind == "hyperbolic":
        return d
    if kind == "generic_span":
        return (d + 1) // 2
    if kind == "intersection":
        return (d + 3) // 2
    return d - 1


def verify_witness(obj) -> List[str]:
    """Re-run every check from serialized data; returns names of failures (empty = valid)."""
    from .rank import verify_certificate

    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("schema") != SCHEMA:
        return ["schema"]
    kind = obj.get("kind")
    if kind not in _CHECKS:
        return ["kind"]
    try:
        form = BinaryForm.from_json(obj["form"])
        cert = RankCertificate.from_json(obj["certificate"])
        checks = _CHECKS[kind](form, obj["params"])
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        return [f"parse:{exc}"]
    fails = [n for n, ok in checks if not ok]
    recorded = {c["name"]: c["value"] for c in obj.get("checks", [])}
    if any(recorded.get(n) is not True for n, _ in checks):
        fails.append("recorded_checks")
    certified = obj.get("certified", {})
    d = form.degree
    real = _expected_real_rank(kind, d)
    if kind in ("generic_span", "intersection"):
        csr = (d + 1) // 2
    else:
        csr = complex_rank(form)[0]
    if certified.get("real_rank") != real or certified.get("complex_rank") != csr:
        fails.append("certified_rank")
    if cert.real_lo != real or cert.real_hi != real or cert.complex_rank != csr:
        fails.append("certificate_rank")
    fails.extend(f"certificate:{n}" for n in verify_certificate(form, cert))
    if "upper_bound_witness" in obj:
        h = BinaryForm.from_json(obj["upper_bound_witness"])
        if not (contract(h, form).is_zero and is_hyperbolic(h) and h.degree <= real):
            fails.append("upper_bound_witness")
    return fails


def build(kind: str, d: int, seed: int = 0, **kw) -> WitnessForm:
    if kind == "hyperbolic":
        return witness_hyperbolic(d, seed, **kw)
    if kind == "generic_span":
        return witness_generic_span(d, seed, **kw)
    if kind == "intersection":
        return witness_intersection(d, seed=seed, **kw)
    if kind == "dminus1":
        return witness_dminus1(d, seed, **kw)
    raise ValueError(f"unknown witness kind {kind!r}")
