"""Catalecticants, apolar contraction and annihilators of point sets.

Conventions (fixed here, relied on everywhere else):

* ``catalecticant(f, r)[j][k] = a_{j+k}`` with ``a`` the normalized
  coefficients of ``f``.
* A kernel vector ``b`` is read as the form ``h = sum_k b_k x**k y**(r-k)``
  (monomial view).
* ``contract(h, f)`` is the degree ``d - r`` form with normalized
  coefficients ``c_j = sum_k b_k a_{j+k}``.

With these, ``contract(h, (alpha*x + beta*y)**d) == 0`` exactly when
``h(alpha, beta) == 0``: a squarefree ``h`` annihilates ``f`` iff ``f`` lies in
the span of the Veronese images of the roots of ``h``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .forms import BinaryForm, PointSetForm, PointSetError, ZeroFormError, is_squarefree
from .linalg import ExactMatrix, nullspace, rank


@dataclass(frozen=True)
class FormSubspace:
    ambient_degree: int
    basis: Tuple[BinaryForm, ...]

    def __post_init__(self):
        for b in self.basis:
            if b.degree != self.ambient_degree:
                raise ValueError("basis form of the wrong degree")
        if self.basis and rank([b.monomial for b in self.basis]) != len(self.basis):
            raise ValueError("basis is not linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: BinaryForm) -> bool:
        if f.degree != self.ambient_degree:
            return False
        if f.is_zero:
            return True
        rows = [b.monomial for b in self.basis] + [f.monomial]
        return rank(rows) == self.dim

    def combination(self, weights: Sequence) -> BinaryForm:
        if len(weights) != self.dim:
            raise ValueError("one weight per basis form required")
        out = BinaryForm.zero(self.ambient_degree)
        for w, b in zip(weights, self.basis):
            out = out + Fraction(w) * b
        return out

    def to_json(self) -> list:
        return [b.to_json() for b in self.basis]

    def __repr__(self) -> str:
        return f"FormSubspace(degree={self.ambient_degree}, dim={self.dim})"


def catalecticant(f: BinaryForm, r: int) -> ExactMatrix:
    d = f.degree
    if f.is_zero:
        raise ZeroFormError("catalecticant of the zero form")
    if not 1 <= r <= d:
        raise ValueError(f"r must lie in [1, {d}], got {r}")
    a = f.coeffs_norm
    return ExactMatrix.from_rows([[a[j + k] for k in range(r + 1)] for j in range(d - r + 1)])


def kernel(m: ExactMatrix) -> FormSubspace:
    """Right kernel, each vector read as a degree ``cols - 1`` form in the monomial view."""
    r = m.cols - 1
    vecs = m.nullspace()
    return FormSubspace(r, tuple(BinaryForm.from_monomial(v).primitive() for v in vecs))


def contract(h: BinaryForm, f: BinaryForm) -> BinaryForm:
    r, d = h.degree, f.degree
    if r > d:
        raise ValueError(f"cannot contract a degree {r} form into degree {d}")
    b, a = h.monomial, f.coeffs_norm
    return BinaryForm.from_normalized(
        [sum((b[k] * a[j + k] for k in range(r + 1) if b[k]), Fraction(0)) for j in range(d - r + 1)]
    )


def apolar_kernel(f: BinaryForm, r: int) -> FormSubspace:
    return kernel(catalecticant(f, r))


def apolar_dims(f: BinaryForm) -> List[int]:
    """``[dim apolar_kernel(f, r) for r in 0..d]`` (``r = 0`` is always 0)."""
    d = f.degree
    return [0] + [r + 1 - catalecticant(f, r).rank() for r in range(1, d + 1)]


def contraction_rows(w: BinaryForm, d: int) -> List[List[Fraction]]:
    """Rows of the linear map ``a -> contract(w, f_a)`` on normalized coefficients."""
    r = w.degree
    b = w.monomial
    rows = []
    for j in range(d - r + 1):
        row = [Fraction(0)] * (d + 1)
        for k in range(r + 1):
            row[j + k] = b[k]
        rows.append(row)
    return rows


def annihilated_by(ws: Sequence[BinaryForm], d: int) -> FormSubspace:
    """Degree-``d`` forms killed by every form in ``ws``."""
    rows = [row for w in ws for row in contraction_rows(w, d)]
    vecs = nullspace(rows, d + 1)
    return FormSubspace(d, tuple(BinaryForm.from_normalized(v).primitive() for v in vecs))


def annihilator_space(w, d: int) -> FormSubspace:
    """Degree-``d`` forms apolar to the squarefree form ``w``.

    This is the real span of the Veronese images of the roots of ``w``.
    """
    form = w.form if isinstance(w, PointSetForm) else w
    if form.degree > d:
        raise ValueError("point set degree exceeds d")
    if not is_squarefree(form):
        raise PointSetError("annihilator of a non-squarefree form")
    return annihilated_by([form], d)


def subspace_json(space: FormSubspace) -> str:
    return json.dumps(space.to_json())
