"""Binary forms over the rationals.

A degree-``d`` form is stored through its normalized coefficients
``a_0..a_d``::

    f = sum_i C(d, i) * a_i * x**i * y**(d - i)

so a pure power ``(alpha*x + beta*y)**d`` has ``a_i = alpha**i * beta**(d-i)``.
The monomial coefficients ``p_i = C(d, i) * a_i`` are derived on demand.

Projective roots are written ``(x : y)``.  Dehomogenizing at ``y = 1`` gives
the univariate polynomial ``sum_i p_i x**i``; the point at infinity
``(1 : 0)`` is a root exactly when ``p_d = 0``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import _upoly as up
from .linalg import det

Rational = Union[int, Fraction]

COEFF_DENOM = 2**20


class ZeroFormError(ValueError):
    """A nonzero form was required."""


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs_norm: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if len(self.coeffs_norm) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs_norm)}"
            )

    # -- construction -------------------------------------------------

    @classmethod
    def from_monomial(cls, coeffs: Sequence[Rational]) -> "BinaryForm":
        d = len(coeffs) - 1
        return cls(d, tuple(Fraction(c) / comb(d, i) for i, c in enumerate(coeffs)))

    @classmethod
    def from_normalized(cls, coeffs: Sequence[Rational]) -> "BinaryForm":
        return cls(len(coeffs) - 1, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def power(cls, alpha: Rational, beta: Rational, d: int) -> "BinaryForm":
        """``(alpha*x + beta*y)**d``."""
        alpha, beta = Fraction(alpha), Fraction(beta)
        return cls(d, tuple(alpha**i * beta ** (d - i) for i in range(d + 1)))

    @classmethod
    def linear(cls, alpha: Rational, beta: Rational) -> "BinaryForm":
        return cls.power(alpha, beta, 1)

    @classmethod
    def from_roots(cls, roots: Iterable["ProjectivePoint"]) -> "BinaryForm":
        """Product of the linear forms vanishing at the given points."""
        out = cls.from_monomial([1])
        for pt in roots:
            out = out * pt.vanishing_form()
        return out

    # -- views -----------------------------------------------------------

    @cached_property
    def monomial(self) -> Tuple[Fraction, ...]:
        d = self.degree
        return tuple(comb(d, i) * a for i, a in enumerate(self.coeffs_norm))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs_norm)

    def dehomogenize(self) -> up.Poly:
        """``f(x, 1)`` as a univariate polynomial (lowest degree first)."""
        return up.trim(self.monomial)

    def infinity_multiplicity(self) -> int:
        """Multiplicity of ``(1 : 0)`` as a root."""
        self._require_nonzero()
        return self.degree - up.degree(self.dehomogenize())

    def __call__(self, x, y):
        return sum(p * x**i * y ** (self.degree - i) for i, p in enumerate(self.monomial))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs_norm, other.coeffs_norm)))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-a for a in self.coeffs_norm))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            p, q = self.monomial, other.monomial
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(p):
                if a:
                    for j, b in enumerate(q):
                        out[i + j] += a * b
            return BinaryForm.from_monomial(out)
        if isinstance(other, (int, Fraction)):
            return BinaryForm(self.degree, tuple(other * a for a in self.coeffs_norm))
        return NotImplemented

    __rmul__ = __mul__

    def derivative_x(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm.zero(0)
        p = self.monomial
        return BinaryForm.from_monomial([i * p[i] for i in range(1, d + 1)])

    def derivative_y(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm.zero(0)
        p = self.monomial
        return BinaryForm.from_monomial([(d - i) * p[i] for i in range(d)])

    def primitive(self) -> "BinaryForm":
        """Rational rescaling with coprime integer monomial coefficients.

        The highest nonzero monomial coefficient is made positive.
        """
        self._require_nonzero()
        ints = up.primitive_int(list(self.monomial))
        if [v for v in ints if v][-1] < 0:
            ints = [-v for v in ints]
        return BinaryForm.from_monomial(ints)

    def proportional(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree or self.is_zero or other.is_zero:
            return False
        return self.primitive() == other.primitive() or self.primitive() == (-other).primitive()

    def _require_nonzero(self):
        if self.is_zero:
            raise ZeroFormError("operation undefined on the zero form")

    # -- serialization -------------------------------------------------------

    def to_json(self, basis: str = "monomial") -> dict:
        coeffs = self.monomial if basis == "monomial" else self.coeffs_norm
        if basis not in ("monomial", "normalized"):
            raise ValueError(f"unknown basis {basis!r}")
        return {"degree": self.degree, "basis": basis, "coeffs": [str(c) for c in coeffs]}

    @classmethod
    def from_json(cls, obj: Union[dict, str]) -> "BinaryForm":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            d = obj["degree"]
            basis = obj.get("basis", "monomial")
            coeffs = [Fraction(c) for c in obj["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed form JSON: {exc}") from exc
        if not isinstance(d, int):
            raise ValueError("degree must be an integer")
        return make_form(d, coeffs, basis)

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for i in range(d, -1, -1):
            c = self.monomial[i]
            if c == 0:
                continue
            mono = "*".join(
                s for s in (
                    f"x^{i}" if i > 1 else ("x" if i == 1 else ""),
                    f"y^{d - i}" if d - i > 1 else ("y" if d - i == 1 else ""),
                ) if s
            )
            terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms) if terms else "0"


def make_form(degree: int, coeffs: Sequence[Rational], basis: str = "normalized") -> BinaryForm:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if len(coeffs) != degree + 1:
        raise ValueError(f"degree {degree} needs {degree + 1} coefficients, got {len(coeffs)}")
    if basis == "normalized":
        return BinaryForm.from_normalized(coeffs)
    if basis == "monomial":
        return BinaryForm.from_monomial(coeffs)
    raise ValueError(f"unknown basis {basis!r}")


@dataclass(frozen=True)
class ProjectivePoint:
    """A real point of the projective line, canonically scaled.

    The Veronese image of ``(alpha : beta)`` is the pure power
    ``(alpha*x + beta*y)**d``; the linear form vanishing at the point is
    ``beta*x - alpha*y``.
    """

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha: Rational, beta: Rational = 1):
        alpha, beta = Fraction(alpha), Fraction(beta)
        if alpha == 0 and beta == 0:
            raise ValueError("(0 : 0) is not a projective point")
        if beta != 0:
            alpha, beta = alpha / beta, Fraction(1)
        else:
            alpha = Fraction(1)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def at_infinity(self) -> bool:
        return self.beta == 0

    def vanishing_form(self) -> BinaryForm:
        return BinaryForm.from_monomial([-self.alpha, self.beta])

    def power(self, d: int) -> BinaryForm:
        return BinaryForm.power(self.alpha, self.beta, d)

    def __repr__(self) -> str:
        return f"({self.alpha} : {self.beta})"


# -- real roots --------------------------------------------------------------


def _as_poly(f) -> up.Poly:
    if isinstance(f, BinaryForm):
        f._require_nonzero()
        return f.dehomogenize()
    p = up.trim(f)
    if not p:
        raise ZeroFormError("zero polynomial")
    return p


def sturm_count(f, lo: Optional[Rational] = None, hi: Optional[Rational] = None) -> int:
    """Distinct real roots of ``f`` in ``(lo, hi]`` (default: the whole line).

    ``f`` is a :class:`BinaryForm` (counted through its dehomogenization, so
    the point at infinity is not included) or a univariate coefficient list.
    """
    p = _as_poly(f)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if len(p) == 1:
        return 0
    return up.count_real_roots(p, lo, hi)


def real_root_count(f: BinaryForm) -> int:
    """Distinct real projective roots, including ``(1 : 0)``."""
    p = _as_poly(f)
    n = 0 if len(p) == 1 else up.count_real_roots(p)
    return n + (1 if up.degree(p) < f.degree else 0)


@dataclass(frozen=True)
class RootIsolation:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    at_infinity: bool
    poly: Tuple[Fraction, ...]  # squarefree dehomogenized part

    def refine(self, width: Rational) -> "RootIsolation":
        p = list(self.poly)
        width = Fraction(width)
        return RootIsolation(
            tuple(up.refine(p, iv, width) for iv in self.intervals), self.at_infinity, self.poly
        )

    def __len__(self) -> int:
        return len(self.intervals) + int(self.at_infinity)


def isolate_real_roots(f: BinaryForm) -> RootIsolation:
    """Disjoint rational intervals, one per distinct finite real root.

    Intervals are open at both ends as far as roots go (endpoints are never
    roots), sorted, and may touch.  ``at_infinity`` flags the root ``(1 : 0)``.
    """
    p = _as_poly(f)
    sf = up.squarefree_part(p)
    ivs = up.isolate(sf) if len(sf) > 1 else []
    return RootIsolation(tuple(ivs), up.degree(p) < f.degree, tuple(sf))


def is_hyperbolic(f: BinaryForm) -> bool:
    """True iff ``f`` has ``deg f`` distinct real projective roots."""
    p = _as_poly(f)
    at_inf = f.degree - up.degree(p)
    if at_inf > 1:
        return False
    finite = up.count_real_roots(p) if len(p) > 1 else 0
    return finite + at_inf == f.degree


# -- resultants ----------------------------------------------------------------


def sylvester_matrix(f: BinaryForm, g: BinaryForm) -> List[List[Fraction]]:
    """Sylvester matrix of two binary forms.

    Rows ``0..deg(g)-1`` hold the monomial coefficients of ``f`` listed from
    ``x**deg f`` down to ``y**deg f``, each shifted one column right of the
    previous; rows ``deg(g)..`` do the same for ``g``.  Using the formal
    degrees makes the resultant vanish exactly on common projective roots.
    """
    m, n = f.degree, g.degree
    size = m + n
    fc = list(reversed(f.monomial))
    gc = list(reversed(g.monomial))
    rows = []
    for k in range(n):
        rows.append([Fraction(0)] * k + fc + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        rows.append([Fraction(0)] * k + gc + [Fraction(0)] * (size - n - 1 - k))
    return rows


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Homogeneous resultant: the determinant of :func:`sylvester_matrix`."""
    f._require_nonzero()
    g._require_nonzero()
    if f.degree + g.degree == 0:
        return Fraction(1)
    return det(sylvester_matrix(f, g))


def discriminant(f: BinaryForm) -> Fraction:
    """Discriminant of a binary form, zero iff a projective root repeats.

    Defined as ``(-1)**(d(d-1)/2) * Res(df/dx, df/dy) / d**(d-2)``, which for
    ``p_d != 0`` agrees with the classical univariate discriminant of the
    dehomogenization and stays a polynomial in the coefficients when the
    leading one vanishes.
    """
    f._require_nonzero()
    d = f.degree
    if d <= 1:
        return Fraction(1)
    fx, fy = f.derivative_x(), f.derivative_y()
    if fx.is_zero or fy.is_zero:
        return Fraction(0)
    r = det(sylvester_matrix(fx, fy))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * r / Fraction(d) ** (d - 2)


def is_squarefree(f: BinaryForm) -> bool:
    p = _as_poly(f)
    if f.degree - up.degree(p) > 1:
        return False
    return up.is_squarefree(p)


# -- random forms --------------------------------------------------------------

DISTRIBUTIONS = ("uniform_rational", "gauss_approx", "uniform_normalized")


def _uniform(rng: random.Random, denom: int) -> Fraction:
    return Fraction(rng.randint(-denom, denom), denom)


def random_form(
    degree: int,
    dist: str = "uniform_rational",
    seed: int = 0,
    denom: int = COEFF_DENOM,
) -> BinaryForm:
    """Seeded random form with coefficients on the grid ``k / denom``.

    ``uniform_rational`` draws monomial coefficients uniformly from
    ``[-1, 1]``; ``gauss_approx`` sums twelve such draws per coefficient;
    ``uniform_normalized`` draws the normalized coefficients ``a_i``
    uniformly instead, which weights the middle monomials by ``C(d, i)``.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    rng = random.Random(seed)
    if dist == "uniform_rational":
        return BinaryForm.from_monomial([_uniform(rng, denom) for _ in range(degree + 1)])
    if dist == "gauss_approx":
        return BinaryForm.from_monomial(
            [sum((_uniform(rng, denom) for _ in range(12)), Fraction(0)) for _ in range(degree + 1)]
        )
    if dist == "uniform_normalized":
        return BinaryForm.from_normalized([_uniform(rng, denom) for _ in range(degree + 1)])
    raise ValueError(f"unknown distribution {dist!r}")


# -- point sets on the rational normal curve -----------------------------------


class PointSetError(ValueError):
    """Invalid point-set data (repeated root, reducible quadratic, ...)."""


@dataclass(frozen=True)
class PointSetForm:
    """A conjugation-stable point set, stored as the squarefree form vanishing on it.

    ``quadratics`` holds ``(b, c)`` for factors ``x**2 + b*x*y + c*y**2``
    with ``b**2 - 4c < 0``, each encoding a pair of conjugate points.
    """

    form: BinaryForm
    real_roots: Tuple[ProjectivePoint, ...]
    quadratics: Tuple[Tuple[Fraction, Fraction], ...]

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def real_root_count(self) -> int:
        return len(self.real_roots)


def make_pointset(
    real_roots: Sequence[ProjectivePoint],
    quadratics: Sequence[Tuple[Rational, Rational]] = (),
) -> PointSetForm:
    pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(*p) for p in real_roots)
    if len(set(pts)) != len(pts):
        raise PointSetError("repeated real root")
    quads = tuple((Fraction(b), Fraction(c)) for b, c in quadratics)
    for b, c in quads:
        if b * b - 4 * c >= 0:
            raise PointSetError(f"quadratic x^2 + ({b})xy + ({c})y^2 is reducible over the reals")
    if len(set(quads)) != len(quads):
        raise PointSetError("repeated quadratic factor")
    w = BinaryForm.from_roots(pts)
    for b, c in quads:
        w = w * BinaryForm.from_monomial([c, b, 1])
    if not is_squarefree(w):
        raise PointSetError("point set form is not squarefree")
    return PointSetForm(w, pts, quads)


def pointset_from_form(w: BinaryForm) -> PointSetForm:
    """Wrap an arbitrary squarefree real form; factor data is left implicit.

    The roots are only present through ``form``.
    """
    if not is_squarefree(w):
        raise PointSetError("form is not squarefree")
    return PointSetForm(w, (), ())


def random_distinct_rationals(rng: random.Random, n: int, bound: int = 12, denom: int = 4) -> List[Fraction]:
    """``n`` distinct rationals ``k/denom`` with ``|k| <= bound*denom``."""
    out: List[Fraction] = []
    seen = set()
    while len(out) < n:
        v = Fraction(rng.randint(-bound * denom, bound * denom), denom)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out
