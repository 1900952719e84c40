"""Dense univariate polynomials over the Gaussian rationals.

Polynomials are tuples of :class:`~bamod.gaussq.GaussQ` coefficients in
ascending order; the empty tuple is the zero polynomial and the last
coefficient of a nonzero polynomial is nonzero.  These helpers back the
rational-function field and the exact genericity tests (characteristic
polynomials, adjugates, gcd-based root separation).
"""

from __future__ import annotations

import functools as _functools

from .gaussq import GaussQ, ONE, ZERO

Poly = tuple


def trim(cs) -> Poly:
    cs = list(cs)
    while cs and cs[-1].is_zero:
        cs.pop()
    return tuple(cs)


def is_zero(a: Poly) -> bool:
    return len(a) == 0


def degree(a: Poly) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(a) - 1


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return trim(out)


def neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, s: GaussQ) -> Poly:
    if s.is_zero:
        return ()
    return trim(c * s for c in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for j, ca in enumerate(a):
        if ca.is_zero:
            continue
        for k, cb in enumerate(b):
            out[j + k] = out[j + k] + ca * cb
    return trim(out)


def divmod_(a: Poly, b: Poly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return (), trim(a)
    r = list(a)
    lb = b[-1]
    q = [ZERO] * (len(a) - db)
    for shift in range(len(a) - db - 1, -1, -1):
        lead = r[shift + db]
        if lead.is_zero:
            continue
        f = lead / lb
        q[shift] = f
        for k in range(db):
            r[shift + k] = r[shift + k] - f * b[k]
    return trim(q), trim(r[:db])


def monic(a: Poly) -> Poly:
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return tuple(a)
    return tuple(c / lc for c in a)


@_functools.lru_cache(maxsize=1 << 14)
def _gcd_cached(a: Poly, b: Poly) -> Poly:
    while b:
        _, r = divmod_(a, b)
        a, b = b, monic(r)
    return a


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor.

    Every remainder is renormalized to monic form (without that the
    Euclidean sequence compounds rational coefficients badly), and the
    whole computation is memoized: elimination over the rational-function
    field hits the same operand pairs constantly.
    """
    return _gcd_cached(monic(trim(a)), monic(trim(b)))


def deriv(a: Poly) -> Poly:
    return trim(GaussQ(k) * c for k, c in enumerate(a) if k > 0)


def eval_at(a: Poly, x: GaussQ) -> GaussQ:
    out = ZERO
    for c in reversed(a):
        out = out * x + c
    return out


def squarefree(a: Poly) -> bool:
    """True when the nonzero polynomial has no repeated roots."""
    if not a:
        return False
    if len(a) == 1:
        return True
    return degree(gcd(a, deriv(a))) == 0


def constant(value) -> Poly:
    g = value if isinstance(value, GaussQ) else GaussQ(value)
    return () if g.is_zero else (g,)


X = (ZERO, ONE)
