"""Dense univariate polynomials over the rationals.

A polynomial is a list of :class:`fractions.Fraction` coefficients, lowest
degree first, with no trailing zeros.  The zero polynomial is ``[]``.
Everything here is exact; nothing is rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

Poly = List[Fraction]
Interval = Tuple[Fraction, Fraction]


def trim(p: Iterable) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, [-c for c in q])


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return []
    return [c * a for a in p]


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        shift = len(r) - 1 - dq
        c = r[-1] / lead
        quo[shift] = c
        for i in range(dq + 1):
            r[shift + i] -= c * q[i]
        r = trim(r)
    return trim(quo), r


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def derivative(p: Poly) -> Poly:
    return trim(i * p[i] for i in range(1, len(p)))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (``[]`` only when both inputs are zero)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def squarefree_part(p: Poly) -> Poly:
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = poly_gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0])


def is_squarefree(p: Poly) -> bool:
    p = trim(p)
    if len(p) <= 2:
        return bool(p)
    return len(poly_gcd(p, derivative(p))) == 1


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_int(p: Poly) -> List[int]:
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    if not p:
        return []
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sturm_chain(p: Poly) -> List[Poly]:
    """Sturm chain of ``p``; each member is rescaled by a positive constant."""
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [_normalize(p)]
    if len(p) == 1:
        return chain
    chain.append(_normalize(derivative(p)))
    while True:
        r = rem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append(_normalize([-c for c in r]))


def _normalize(p: Poly) -> Poly:
    # positive rescaling keeps every sign pattern intact and numbers small
    lead = abs(p[-1])
    return [c / lead for c in p]


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _var_at(chain: List[Poly], x: Optional[Fraction], at: int = 0) -> int:
    if x is None:
        # at = +1 for +infinity, -1 for -infinity
        return _variations(
            _sign(q[-1]) * (1 if at > 0 or (len(q) - 1) % 2 == 0 else -1)
            for q in chain
        )
    return _variations(_sign(evaluate(q, x)) for q in chain)


def count_real_roots(
    p: Poly,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    chain: Optional[List[Poly]] = None,
) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` bounds stand for -inf / +inf.
    """
    if chain is None:
        chain = sturm_chain(p)
    v_lo = _var_at(chain, lo, -1)
    v_hi = _var_at(chain, hi, +1)
    return v_lo - v_hi


def cauchy_bound(p: Poly) -> Fraction:
    """Strict bound: every complex root z satisfies ``|z| < cauchy_bound(p)``."""
    p = trim(p)
    if len(p) <= 1:
        return Fraction(1)
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p[:-1]) / lead


def _split_point(p: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    if evaluate(p, mid) != 0:
        return mid
    for k in (3, 5, 2, 6, 1, 7):
        m = lo + (hi - lo) * k / 8
        if evaluate(p, m) != 0:
            return m
    raise AssertionError("no non-root split point found")  # pragma: no cover


def isolate(p: Poly) -> List[Interval]:
    """Isolating intervals for the distinct real roots of ``p``, sorted.

    Each interval ``(lo, hi)`` has ``lo < hi``, neither endpoint is a root,
    and exactly one root lies strictly inside.  Neighbouring intervals may
    share an endpoint.
    """
    p = trim(p)
    if len(p) <= 1:
        if not p:
            raise ValueError("zero polynomial")
        return []
    sf = squarefree_part(p)
    chain = sturm_chain(sf)
    b = cauchy_bound(sf)
    out: List[Interval] = []
    stack = [(-b, b, count_real_roots(sf, -b, b, chain))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        m = _split_point(sf, lo, hi)
        left = count_real_roots(sf, lo, m, chain)
        stack.append((m, hi, n - left))
        stack.append((lo, m, left))
    out.sort()
    return out


def refine(p: Poly, interval: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval of a squarefree ``p`` down to ``width``."""
    lo, hi = interval
    s_lo = _sign(evaluate(p, lo))
    while hi - lo > width:
        m = (lo + hi) / 2
        s_m = _sign(evaluate(p, m))
        if s_m == 0:
            return m, m
        if s_m == s_lo:
            lo = m
        else:
            hi = m
    return lo, hi


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Lagrange interpolation through distinct nodes."""
    out: Poly = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis: Poly = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = mul(basis, [-xj, Fraction(1)])
            denom *= xi - xj
        out = add(out, scale(basis, yi / denom))
    return out
