"""Complex and real Waring rank of binary forms, with re-checkable evidence.

Real rank is read off apolarity: ``f`` is a sum of ``r`` real ``d``-th
powers of pairwise independent linear forms iff some degree-``r`` form
apolar to ``f`` has ``r`` distinct real roots.  Upper bounds come from such
witnesses, lower bounds from exact exclusions at every smaller degree
(existence is monotone in ``r``: multiply a witness by a linear form with a
fresh real root).

Two classical facts are used as background and tagged ``theorem`` in the
evidence rather than re-derived:

* Sylvester: complex rank is ``r0`` or ``d - r0 + 2`` where ``r0`` is the
  least degree with a nonzero apolar form.
* For ``d >= 3`` a squarefree form has real rank ``d`` iff it is hyperbolic,
  so squarefree non-hyperbolic forms have real rank at most ``d - 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

import mpmath

from . import _upoly as up
from .apolarity import FormSubspace, apolar_kernel, contract
from .forms import (
    BinaryForm,
    PointSetForm,
    ZeroFormError,
    is_hyperbolic,
    is_squarefree,
    isolate_real_roots,
)
from .hypdecide import DEFAULT_TRIALS, Verdict, decide, decide_dim1, decide_dim2, search_witness

SCHEMA = 1


class NonSquarefreeError(ValueError):
    """The rank engine only handles squarefree forms unless told otherwise."""


class DecompositionError(RuntimeError):
    pass


# evidence kinds
KERNEL_TRIVIAL = "kernel_trivial"
NO_HYPERBOLIC = "no_hyperbolic"
APOLAR_WITNESS = "apolar_witness"
HYPERBOLIC_INPUT = "hyperbolic_input"
NONHYPERBOLIC_SQUAREFREE = "nonhyperbolic_squarefree"
COMPLEX_RANK_BOUND = "complex_rank_bound"
RANK_AT_MOST_DEGREE = "rank_at_most_degree"
THEOREM = "theorem"

_THEOREM_KINDS = {HYPERBOLIC_INPUT, NONHYPERBOLIC_SQUAREFREE, COMPLEX_RANK_BOUND, RANK_AT_MOST_DEGREE, THEOREM}


@dataclass(frozen=True)
class Evidence:
    kind: str
    degree: int = 0
    form: Optional[BinaryForm] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "degree": self.degree}
        if self.form is not None:
            out["form"] = self.form.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Evidence":
        form = BinaryForm.from_json(obj["form"]) if "form" in obj else None
        return cls(obj["kind"], int(obj.get("degree", 0)), form, obj.get("detail", ""))


@dataclass(frozen=True)
class ComplexRankEvidence:
    r0: int
    kernel_dim: int
    witness: Optional[BinaryForm]  # squarefree apolar form of degree r0, if any

    def to_json(self) -> dict:
        return {
            "r0": self.r0,
            "kernel_dim": self.kernel_dim,
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ComplexRankEvidence":
        w = obj.get("witness")
        return cls(int(obj["r0"]), int(obj["kernel_dim"]), None if w is None else BinaryForm.from_json(w))


@dataclass(frozen=True)
class RankCertificate:
    degree: int
    complex_rank: int
    complex_evidence: ComplexRankEvidence
    real_lo: int
    real_hi: int
    evidence_lo: Tuple[Evidence, ...]
    evidence_hi: Tuple[Evidence, ...]
    method: str = "bracket"
    stratum: str = "generic"

    @property
    def exact(self) -> bool:
        return self.real_lo == self.real_hi

    @property
    def theorem_backed(self) -> bool:
        return any(e.kind in _THEOREM_KINDS for e in self.evidence_lo + self.evidence_hi)

    @property
    def label(self) -> str:
        return str(self.real_lo) if self.exact else f"[{self.real_lo},{self.real_hi}]"

    def contains(self, r: int) -> bool:
        return self.real_lo <= r <= self.real_hi

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "degree": self.degree,
            "complex_rank": self.complex_rank,
            "real_lo": self.real_lo,
            "real_hi": self.real_hi,
            "exact": self.exact,
            "method": self.method,
            "stratum": self.stratum,
            "complex_evidence": self.complex_evidence.to_json(),
            "evidence": [dict(e.to_json(), bound="lo") for e in self.evidence_lo]
            + [dict(e.to_json(), bound="hi") for e in self.evidence_hi],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RankCertificate":
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unsupported certificate schema {obj.get('schema')!r}")
        ev = obj["evidence"]
        return cls(
            degree=int(obj["degree"]),
            complex_rank=int(obj["complex_rank"]),
            complex_evidence=ComplexRankEvidence.from_json(obj["complex_evidence"]),
            real_lo=int(obj["real_lo"]),
            real_hi=int(obj["real_hi"]),
            evidence_lo=tuple(Evidence.from_json(e) for e in ev if e.get("bound") == "lo"),
            evidence_hi=tuple(Evidence.from_json(e) for e in ev if e.get("bound") == "hi"),
            method=obj.get("method", "bracket"),
            stratum=obj.get("stratum", "generic"),
        )


def _require(f: BinaryForm, allow_nonsquarefree: bool = False) -> None:
    if f.is_zero:
        raise ZeroFormError("rank of the zero form is undefined")
    if f.degree < 1:
        raise ValueError("degree must be at least 1")
    if not allow_nonsquarefree and not is_squarefree(f):
        raise NonSquarefreeError("form is not squarefree")


# -- complex rank ------------------------------------------------------------


def complex_rank(f: BinaryForm, seed: int = 0) -> Tuple[int, ComplexRankEvidence]:
    """Sylvester's algorithm.

    A kernel of dimension two or more at ``r0`` forces ``r0 == d - r0 + 2``,
    so the answer is exact whichever branch the squarefree search lands in.
    """
    _require(f, allow_nonsquarefree=True)
    d = f.degree
    for r in range(1, d + 1):
        space = apolar_kernel(f, r)
        if space.dim:
            break
    r0 = r
    witness = _squarefree_member(space, seed)
    if witness is not None:
        return r0, ComplexRankEvidence(r0, space.dim, witness)
    return d - r0 + 2, ComplexRankEvidence(r0, space.dim, None)


def _squarefree_member(space: FormSubspace, seed: int, trials: int = 50) -> Optional[BinaryForm]:
    for b in space.basis:
        if is_squarefree(b):
            return b
    if space.dim == 1:
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        g = space.combination([rng.randint(-1000, 1000) for _ in range(space.dim)])
        if not g.is_zero and is_squarefree(g):
            return g.primitive()
    return None


# -- real rank ---------------------------------------------------------------


def _certificate(f, csr, cev, lo, hi, ev_lo, ev_hi, method, stratum="generic") -> RankCertificate:
    return RankCertificate(f.degree, csr, cev, lo, hi, tuple(ev_lo), tuple(ev_hi), method, stratum)


def real_rank_bracket(
    f: BinaryForm,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    allow_nonsquarefree: bool = False,
) -> RankCertificate:
    """General bracket engine: exact tiers where possible, search otherwise."""
    _require(f, allow_nonsquarefree)
    d = f.degree
    csr, cev = complex_rank(f)
    squarefree = is_squarefree(f)
    if d >= 3 and squarefree and is_hyperbolic(f):
        ev = [Evidence(HYPERBOLIC_INPUT, d)]
        return _certificate(f, csr, cev, d, d, ev, ev, "bracket")
    # beyond this degree a witness is guaranteed by background theorems
    if d >= 3 and squarefree:
        top, hi_ev = d - 1, [Evidence(NONHYPERBOLIC_SQUAREFREE, d - 1)]
    else:
        top, hi_ev = d, [Evidence(RANK_AT_MOST_DEGREE, d)]
    hi = top
    ev_lo: List[Evidence] = []
    excluded = 0
    chain_exact = True
    for r in range(1, top + 1):
        space = apolar_kernel(f, r)
        if space.dim == 0:
            if chain_exact:
                ev_lo.append(Evidence(KERNEL_TRIVIAL, r))
                excluded = r
            continue
        dec = decide(space, trials, seed + r)
        if dec.exists:
            hi, hi_ev = r, [Evidence(APOLAR_WITNESS, r, dec.witness.primitive(), dec.exactness)]
            break
        if dec.verdict is Verdict.NOT_EXISTS and chain_exact:
            ev_lo.append(Evidence(NO_HYPERBOLIC, r, detail=f"dim{space.dim}"))
            excluded = r
        else:
            chain_exact = False
    lo = excluded + 1
    if lo < csr:
        ev_lo.append(Evidence(COMPLEX_RANK_BOUND, csr))
        lo = csr
    return _certificate(f, csr, cev, lo, hi, ev_lo, hi_ev, "bracket")


def _fallback(f: BinaryForm, trials: int, seed: int) -> RankCertificate:
    cert = real_rank_bracket(f, trials, seed)
    return RankCertificate(
        cert.degree, cert.complex_rank, cert.complex_evidence, cert.real_lo, cert.real_hi,
        cert.evidence_lo, cert.evidence_hi, "bracket", "nongeneric",
    )


def _trivial_upto(r: int) -> List[Evidence]:
    return [Evidence(KERNEL_TRIVIAL, k) for k in range(1, r + 1)]


def classify_d5(f: BinaryForm, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankCertificate:
    _require(f)
    if f.degree != 5:
        raise ValueError("classify_d5 needs a quintic")
    if apolar_kernel(f, 2).dim != 0:
        return _fallback(f, trials, seed)
    k3 = apolar_kernel(f, 3)
    if k3.dim != 1:
        return _fallback(f, trials, seed)
    g = k3.basis[0]
    csr = 3 if is_squarefree(g) else 4
    cev = ComplexRankEvidence(3, 1, g if csr == 3 else None)
    if decide_dim1(g).exists:
        return _certificate(f, csr, cev, 3, 3, _trivial_upto(2), [Evidence(APOLAR_WITNESS, 3, g, "exact")], "classify_d5")
    if is_hyperbolic(f):
        ev = [Evidence(HYPERBOLIC_INPUT, 5)]
        return _certificate(f, csr, cev, 5, 5, ev, ev, "classify_d5")
    ev_lo = _trivial_upto(2) + [Evidence(NO_HYPERBOLIC, 3, detail="dim1")]
    return _certificate(f, csr, cev, 4, 4, ev_lo, [Evidence(NONHYPERBOLIC_SQUAREFREE, 4)], "classify_d5")


def classify_d6(f: BinaryForm, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankCertificate:
    _require(f)
    if f.degree != 6:
        raise ValueError("classify_d6 needs a sextic")
    if apolar_kernel(f, 3).dim != 0:
        return _fallback(f, trials, seed)
    k4 = apolar_kernel(f, 4)
    if k4.dim != 2:
        return _fallback(f, trials, seed)
    csr, cev = complex_rank(f)
    dec = decide_dim2(*k4.basis)
    if dec.exists:
        return _certificate(
            f, csr, cev, 4, 4, _trivial_upto(3), [Evidence(APOLAR_WITNESS, 4, dec.witness.primitive(), "exact")],
            "classify_d6",
        )
    if is_hyperbolic(f):
        ev = [Evidence(HYPERBOLIC_INPUT, 6)]
        return _certificate(f, csr, cev, 6, 6, ev, ev, "classify_d6")
    ev_lo = _trivial_upto(3) + [Evidence(NO_HYPERBOLIC, 4, detail="dim2")]
    return _certificate(f, csr, cev, 5, 5, ev_lo, [Evidence(NONHYPERBOLIC_SQUAREFREE, 5)], "classify_d6")


def bracket_d7(f: BinaryForm, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankCertificate:
    _require(f)
    if f.degree != 7:
        raise ValueError("bracket_d7 needs a septic")
    if apolar_kernel(f, 3).dim != 0:
        return _fallback(f, trials, seed)
    k4, k5 = apolar_kernel(f, 4), apolar_kernel(f, 5)
    if k4.dim != 1 or k5.dim != 3:
        return _fallback(f, trials, seed)
    g = k4.basis[0]
    csr = 4 if is_squarefree(g) else 5
    cev = ComplexRankEvidence(4, 1, g if csr == 4 else None)
    if is_hyperbolic(f):
        ev = [Evidence(HYPERBOLIC_INPUT, 7)]
        return _certificate(f, csr, cev, 7, 7, ev, ev, "bracket_d7")
    if is_hyperbolic(g):
        return _certificate(f, csr, cev, 4, 4, _trivial_upto(3), [Evidence(APOLAR_WITNESS, 4, g, "exact")], "bracket_d7")
    ev_lo = _trivial_upto(3) + [Evidence(NO_HYPERBOLIC, 4, detail="dim1")]
    dec = search_witness(k5, trials, seed)
    if dec.exists:
        hi_ev = [Evidence(APOLAR_WITNESS, 5, dec.witness.primitive(), "search_only")]
        return _certificate(f, csr, cev, 5, 5, ev_lo, hi_ev, "bracket_d7")
    return _certificate(f, csr, cev, 5, 6, ev_lo, [Evidence(NONHYPERBOLIC_SQUAREFREE, 6)], "bracket_d7")


def classify(f: BinaryForm, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankCertificate:
    """Degree-appropriate procedure: exact for d = 5, 6; bracket for d = 7; general otherwise."""
    if f.degree == 5:
        return classify_d5(f, trials, seed)
    if f.degree == 6:
        return classify_d6(f, trials, seed)
    if f.degree == 7:
        return bracket_d7(f, trials, seed)
    return real_rank_bracket(f, trials, seed)


# -- certificate audit ---------------------------------------------------------


def verify_certificate(f: BinaryForm, cert: RankCertificate) -> List[str]:
    """Re-check every evidence item from scratch; returns the failed checks."""
    fails: List[str] = []
    d = f.degree
    if cert.degree != d:
        return ["degree"]
    squarefree = is_squarefree(f)

    # complex rank
    cev = cert.complex_evidence
    dims = [apolar_kernel(f, r).dim for r in range(1, cev.r0 + 1)]
    if any(dims[:-1]) or dims[-1] != cev.kernel_dim or cev.kernel_dim == 0:
        fails.append("complex_rank.kernel_dims")
    if cev.witness is not None:
        if cev.witness.degree != cev.r0 or not contract(cev.witness, f).is_zero or not is_squarefree(cev.witness):
            fails.append("complex_rank.witness")
        if cert.complex_rank != cev.r0:
            fails.append("complex_rank.value")
    else:
        if cev.kernel_dim == 1:
            gen_ok = not is_squarefree(apolar_kernel(f, cev.r0).basis[0])
        else:
            gen_ok = 2 * cev.r0 == d + 2
        if not gen_ok or cert.complex_rank != d - cev.r0 + 2:
            fails.append("complex_rank.value")

    if not (cert.complex_rank <= cert.real_lo <= cert.real_hi <= d):
        fails.append("bracket.order")

    # lower bound: every r < real_lo must be excluded
    covered = set()
    for e in cert.evidence_lo:
        if e.kind == KERNEL_TRIVIAL:
            if apolar_kernel(f, e.degree).dim != 0:
                fails.append(f"lo.kernel_trivial[{e.degree}]")
            covered.add(e.degree)
        elif e.kind == NO_HYPERBOLIC:
            space = apolar_kernel(f, e.degree)
            if space.dim > 2 or decide(space).verdict is not Verdict.NOT_EXISTS:
                fails.append(f"lo.no_hyperbolic[{e.degree}]")
            covered.add(e.degree)
        elif e.kind == COMPLEX_RANK_BOUND:
            if e.degree != cert.complex_rank:
                fails.append("lo.complex_rank_bound")
            covered.update(range(1, cert.complex_rank))
        elif e.kind == HYPERBOLIC_INPUT:
            if not (squarefree and d >= 3 and is_hyperbolic(f)):
                fails.append("lo.hyperbolic_input")
            covered.update(range(1, d))
        elif e.kind == THEOREM:
            covered.update(range(1, e.degree))
        else:
            fails.append(f"lo.unknown_kind[{e.kind}]")
    if any(r not in covered for r in range(1, cert.real_lo)):
        fails.append("lo.coverage")

    # upper bound
    hi_ok = False
    for e in cert.evidence_hi:
        if e.kind == APOLAR_WITNESS:
            h = e.form
            if (
                h is None
                or h.degree != e.degree
                or not contract(h, f).is_zero
                or not is_hyperbolic(h)
            ):
                fails.append(f"hi.apolar_witness[{e.degree}]")
            else:
                hi_ok = hi_ok or e.degree <= cert.real_hi
        elif e.kind == HYPERBOLIC_INPUT:
            if squarefree and d >= 3 and is_hyperbolic(f):
                hi_ok = hi_ok or cert.real_hi >= d
            else:
                fails.append("hi.hyperbolic_input")
        elif e.kind == NONHYPERBOLIC_SQUAREFREE:
            if squarefree and d >= 3 and not is_hyperbolic(f):
                hi_ok = hi_ok or cert.real_hi >= d - 1
            else:
                fails.append("hi.nonhyperbolic_squarefree")
        elif e.kind == RANK_AT_MOST_DEGREE:
            hi_ok = hi_ok or cert.real_hi >= d
        elif e.kind == THEOREM:
            hi_ok = hi_ok or cert.real_hi >= e.degree
        else:
            fails.append(f"hi.unknown_kind[{e.kind}]")
    if not hi_ok:
        fails.append("hi.coverage")
    return fails


# -- decompositions ------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """``f ~ sum_i c_i (alpha_i x + beta_i y)**d`` in high precision."""

    terms: Tuple[Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf], ...]  # (c, alpha, beta)
    residual: mpmath.mpf
    precision_bits: int

    def __len__(self) -> int:
        return len(self.terms)


def _mpf(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def _points_from_roots(h: BinaryForm, width: Fraction) -> List[Tuple[mpmath.mpf, mpmath.mpf]]:
    iso = isolate_real_roots(h).refine(width)
    pts = [(_mpf((lo + hi) / 2), mpmath.mpf(1)) for lo, hi in iso.intervals]
    if iso.at_infinity:
        pts.append((mpmath.mpf(1), mpmath.mpf(0)))
    return pts


def decompose(f: BinaryForm, witness_h: BinaryForm, precision_bits: int = 128, refinements: int = 3) -> Decomposition:
    """Numerical terms of the decomposition supported on the roots of ``witness_h``.

    The root of ``h`` at ``(alpha : beta)`` carries the linear form
    ``alpha*x + beta*y``.  Coefficients come from a least-squares solve;
    the residual is the max-norm error over monomial coefficients.
    """
    if not contract(witness_h, f).is_zero:
        raise DecompositionError("witness is not apolar to f")
    if not is_hyperbolic(witness_h):
        raise DecompositionError("witness is not hyperbolic")
    d = f.degree
    scale = max(abs(c) for c in f.monomial)
    with mpmath.workprec(precision_bits + 64):
        target = mpmath.matrix([_mpf(c) for c in f.monomial])
        tol = mpmath.mpf(2) ** (-precision_bits // 2) * _mpf(scale)
        for attempt in range(refinements + 1):
            width = Fraction(1, 2 ** (precision_bits + 32 * attempt))
            pts = _points_from_roots(witness_h, width)
            a = mpmath.matrix(d + 1, len(pts))
            for i, (al, be) in enumerate(pts):
                for k in range(d + 1):
                    a[k, i] = comb(d, k) * al**k * be ** (d - k)
            coeffs = mpmath.lu_solve(a, target)
            resid = max(abs(v) for v in (a * coeffs - target))
            if resid <= tol:
                terms = tuple((coeffs[i], al, be) for i, (al, be) in enumerate(pts))
                return Decomposition(terms, resid, precision_bits)
    raise DecompositionError(f"residual {mpmath.nstr(resid, 5)} above tolerance after {refinements} refinements")


# -- uniqueness of minimal supports ------------------------------------------


def _hgcd_degree(a: BinaryForm, b: BinaryForm) -> int:
    g = up.poly_gcd(a.dehomogenize(), b.dehomogenize())
    return up.degree(g) + min(a.infinity_multiplicity(), b.infinity_multiplicity())


def check_union_bound(a, b, d: int) -> bool:
    """Two minimal supports of one point either coincide or have a union of size >= d + 2."""
    fa = a.form if isinstance(a, PointSetForm) else a
    fb = b.form if isinstance(b, PointSetForm) else b
    if not (is_squarefree(fa) and is_squarefree(fb)):
        raise ValueError("supports must be squarefree")
    if fa.degree == fb.degree and fa.proportional(fb):
        return True
    return fa.degree + fb.degree - _hgcd_degree(fa, fb) >= d + 2
