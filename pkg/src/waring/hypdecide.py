"""Does a linear space of binary forms contain a hyperbolic form?

Lines and pencils are decided exactly.  In dimension three and up the
question is a genuine semialgebraic one, so only a seeded witness search is
offered and it answers ``EXISTS`` or ``UNKNOWN``, never ``NOT_EXISTS``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from . import _upoly as up
from .apolarity import FormSubspace
from .forms import COEFF_DENOM, BinaryForm, ZeroFormError, discriminant, is_hyperbolic
from .linalg import rank

DEFAULT_TRIALS = 200


class Verdict(str, Enum):
    EXISTS = "EXISTS"
    NOT_EXISTS = "NOT_EXISTS"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class HypDecision:
    verdict: Verdict
    witness: Optional[BinaryForm] = None
    trials_used: int = 0
    exactness: str = "exact"  # or "search_only"

    def __post_init__(self):
        if (self.verdict is Verdict.EXISTS) != (self.witness is not None):
            raise ValueError("a witness accompanies EXISTS and nothing else")
        if self.verdict is Verdict.NOT_EXISTS and self.exactness != "exact":
            raise ValueError("NOT_EXISTS must be exact")

    @property
    def exists(self) -> bool:
        return self.verdict is Verdict.EXISTS


def _exists(w: BinaryForm, trials: int = 0, exactness: str = "exact") -> HypDecision:
    return HypDecision(Verdict.EXISTS, w, trials, exactness)


def decide_dim1(g: BinaryForm) -> HypDecision:
    if g.is_zero:
        raise ZeroFormError("decide_dim1 on the zero form")
    if is_hyperbolic(g):
        return _exists(g, 1)
    return HypDecision(Verdict.NOT_EXISTS, None, 1)


# -- pencils -------------------------------------------------------------------


def pencil_member(g1: BinaryForm, g2: BinaryForm, t: Fraction) -> BinaryForm:
    return g1 + t * g2


def pencil_discriminant(g1: BinaryForm, g2: BinaryForm) -> up.Poly:
    """``D(t) = discriminant(g1 + t*g2)`` as a polynomial in ``t``.

    The discriminant is homogeneous of degree ``2(r-1)`` in the coefficients,
    so ``2r - 1`` exact evaluations determine it.
    """
    r = g1.degree
    if r <= 1:
        return [Fraction(1)]
    n = 2 * r - 1
    ts = [Fraction(k) for k in range(n)]
    vals = []
    for t in ts:
        g = pencil_member(g1, g2, t)
        vals.append(Fraction(0) if g.is_zero else discriminant(g))
    return up.interpolate(ts, vals)


def pencil_leading(g1: BinaryForm, g2: BinaryForm) -> up.Poly:
    """``l(t)``: the ``x**r`` coefficient of ``g1 + t*g2``."""
    return up.trim([g1.monomial[-1], g2.monomial[-1]])


@dataclass(frozen=True)
class PencilCells:
    """Sample parameters for the pencil ``g1 + t*g2``.

    ``boundary`` is the squarefree part of ``D(t) * l(t)`` (empty when
    ``D`` vanishes identically); ``intervals`` isolate its real roots;
    ``samples`` holds one rational point per open cell between them;
    ``rational_roots`` lists boundary roots that are rational and were found
    exactly.
    """

    boundary: Tuple[Fraction, ...]
    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    samples: Tuple[Fraction, ...]
    rational_roots: Tuple[Fraction, ...]


def pencil_cells(g1: BinaryForm, g2: BinaryForm) -> PencilCells:
    disc = pencil_discriminant(g1, g2)
    if not disc:
        return PencilCells((), (), (Fraction(0),), ())
    lead = pencil_leading(g1, g2)
    boundary = up.squarefree_part(up.mul(disc, lead) if lead else disc)
    if len(boundary) <= 1:
        return PencilCells(tuple(boundary), (), (Fraction(0),), ())
    ivs = up.isolate(boundary)
    samples: List[Fraction] = [ivs[0][0] - 1]
    for (_, hi), (lo, _) in zip(ivs, ivs[1:]):
        samples.append((hi + lo) / 2)
    samples.append(ivs[-1][1] + 1)
    rational_roots = []
    if len(lead) == 2:
        rational_roots.append(-lead[0] / lead[1])
    # cheap exact hits: a root sitting on a bisection endpoint of a tiny interval
    for lo, hi in ivs:
        for v in (lo, hi):
            if up.evaluate(boundary, v) == 0 and v not in rational_roots:
                rational_roots.append(v)
    return PencilCells(tuple(boundary), tuple(ivs), tuple(samples), tuple(rational_roots))


def decide_dim2(g1: BinaryForm, g2: BinaryForm) -> HypDecision:
    """Exact decision for the pencil spanned by ``g1`` and ``g2``.

    On each open cell of the parameter line cut out by the real roots of
    ``D(t) * l(t)`` the number of distinct real projective roots of
    ``g1 + t*g2`` is constant, so one sample per cell is enough.  ``g2``
    itself covers ``t = infinity``.  The hyperbolic locus is open, so cells
    also cover any hyperbolic member sitting at an irrational boundary root.
    """
    if g1.degree != g2.degree:
        raise ValueError("pencil generators must have the same degree")
    if g1.is_zero or g2.is_zero or rank([g1.monomial, g2.monomial]) != 2:
        raise ValueError("pencil generators must be linearly independent")
    tested = 1
    if is_hyperbolic(g1):
        return _exists(g1, tested)
    cells = pencil_cells(g1, g2)
    for t in cells.samples + cells.rational_roots:
        if t == 0:
            continue
        tested += 1
        g = pencil_member(g1, g2, t)
        if is_hyperbolic(g):
            return _exists(g, tested)
    tested += 1
    if is_hyperbolic(g2):
        return _exists(g2, tested)
    return HypDecision(Verdict.NOT_EXISTS, None, tested)


# -- search ------------------------------------------------------------------


def _draw(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-COEFF_DENOM, COEFF_DENOM), COEFF_DENOM)


def search_witness(
    space: FormSubspace,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    try_basis_first: bool = False,
) -> HypDecision:
    """Seeded random search for a hyperbolic member of ``space``.

    With ``try_basis_first`` the basis forms are tested before any random
    combination; each counts as a trial.
    """
    if space.dim == 0:
        raise ValueError("search in the zero subspace")
    rng = random.Random(seed)
    used = 0
    if try_basis_first:
        for b in space.basis:
            if used >= trials:
                break
            used += 1
            if is_hyperbolic(b):
                return _exists(b, used, "search_only")
    while used < trials:
        used += 1
        weights = [_draw(rng) for _ in range(space.dim)]
        if not any(weights):
            continue
        g = space.combination(weights)
        if not g.is_zero and is_hyperbolic(g):
            return _exists(g, used, "search_only")
    return HypDecision(Verdict.UNKNOWN, None, used, "search_only")


def decide(space: FormSubspace, trials: int = DEFAULT_TRIALS, seed: int = 0) -> HypDecision:
    if space.dim == 0:
        return HypDecision(Verdict.NOT_EXISTS, None, 0)
    if space.dim == 1:
        return decide_dim1(space.basis[0])
    if space.dim == 2:
        return decide_dim2(*space.basis)
    return search_witness(space, trials, seed)
