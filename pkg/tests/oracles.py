"""Independent numeric oracles used by the tests.

Nothing here touches the exact code paths: roots come from mpmath / numpy
eigenvalue solvers on floating approximations of the coefficients.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np


def mp_real_root_count(coeffs_low_first, prec: int = 100) -> int:
    """Distinct real roots of a univariate polynomial via mpmath at ``prec`` bits."""
    c = list(coeffs_low_first)
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return 0
    with mpmath.workprec(prec):
        mp_c = [mpmath.mpf(q.numerator) / q.denominator for q in reversed(c)]
        roots = mpmath.polyroots(mp_c, maxsteps=400, extraprec=2 * prec)
        scale = max(1, max(abs(r) for r in roots))
        tol = mpmath.mpf(2) ** (-prec // 2) * scale
        real = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < tol)
    distinct = []
    for r in real:
        if not distinct or abs(r - distinct[-1]) > tol:
            distinct.append(r)
    return len(distinct)


def _float_coeffs(form):
    return np.array([float(p) for p in form.monomial])


def pencil_scan(g1, g2, samples: int, rel_tol: float = 1e-7):
    """Angles ``theta`` in ``(-pi/2, pi/2]`` where ``cos*g1 + sin*g2`` looks hyperbolic.

    Vectorized: roots are eigenvalues of batched companion matrices.
    Returns candidate angles; callers confirm them exactly.
    """
    r = g1.degree
    a, b = _float_coeffs(g1), _float_coeffs(g2)
    theta = np.linspace(-np.pi / 2, np.pi / 2, samples, endpoint=False) + np.pi / (2 * samples)
    coeffs = np.cos(theta)[:, None] * a[None, :] + np.sin(theta)[:, None] * b[None, :]
    lead = coeffs[:, -1]
    scale = np.abs(coeffs).max(axis=1)
    ok = np.abs(lead) > 1e-12 * scale
    coeffs, theta = coeffs[ok], theta[ok]
    monic = coeffs[:, :-1] / coeffs[:, -1:]
    n = coeffs.shape[0]
    comp = np.zeros((n, r, r))
    comp[:, 1:, :-1] = np.eye(r - 1)
    comp[:, :, -1] = -monic
    eig = np.linalg.eigvals(comp)
    mag = np.maximum(1.0, np.abs(eig).max(axis=1))
    all_real = (np.abs(eig.imag) < rel_tol * mag[:, None]).all(axis=1)
    srt = np.sort(eig.real, axis=1)
    sep = np.diff(srt, axis=1).min(axis=1) if r > 1 else np.ones(n)
    hits = all_real & (sep > rel_tol * mag)
    return theta[hits]


def angle_member(g1, g2, theta: float):
    c = Fraction(float(np.cos(theta))).limit_denominator(10**9)
    s = Fraction(float(np.sin(theta))).limit_denominator(10**9)
    return c * g1 + s * g2
