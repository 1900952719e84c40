"""Meromorphic functions with pole on the pole hypersurface.

A pole-order-d function is stored as a bidegree-(d,d) numerator over the
Gaussian rationals, understood as ``numerator / f^d``.  The ratio is well
defined on the glued variety exactly when the numerator satisfies the
descent identity

    one-factor gluing:  numerator(1,0,t) = A^d * numerator(0,1,P(t))
    two-factor gluing:  numerator(1,0,t) = B^d * numerator(t,0,1)

identically in t.  The stored pole order is the nominal d; common factors
with the pole form are never cancelled.
"""

from __future__ import annotations

from math import comb

from . import linalg
from .biform import BiForm, bidegree_monomials, t_monomials
from .errors import NotAdmissible, VarietyMismatch
from .gaussq import ONE, ZERO


class MeroFunc:
    """Meromorphic function numerator/f^d on a spectral datum."""

    __slots__ = ("data", "d", "numerator")

    def __init__(self, data, d: int, numerator: BiForm):
        if d < 1:
            raise ValueError("pole order must be a positive integer")
        if (numerator.n, numerator.dz, numerator.dt) != (data.n, d, d):
            raise ValueError(
                f"numerator bidegree {(numerator.dz, numerator.dt)} does not "
                f"match pole order {d}")
        if numerator.kind == "exprat":
            raise ValueError("meromorphic numerators have constant coefficients")
        self.data = data
        self.d = d
        self.numerator = numerator

    def descent_defect(self) -> dict:
        factor = self.data.glue_scale ** self.d
        d1 = self.numerator.restrict_z((ONE, ZERO))
        if self.data.kind == "gamma":
            d2 = self.numerator.subst_t(self.data.P).restrict_z((ZERO, ONE))
        else:
            d2 = self.numerator.swap_factors().restrict_z((ZERO, ONE))
        out = dict(d1)
        for a, c in d2.items():
            term = factor * c
            prev = out.get(a)
            acc = -term if prev is None else prev - term
            if acc.is_zero:
                out.pop(a, None)
            else:
                out[a] = acc
        return out

    def __mul__(self, other):
        if not isinstance(other, MeroFunc):
            return NotImplemented
        if other.data != self.data:
            raise VarietyMismatch("operands live on different spectral data")
        return MeroFunc(self.data, self.d + other.d,
                        self.numerator * other.numerator)

    def __add__(self, other):
        if not isinstance(other, MeroFunc):
            return NotImplemented
        if other.data != self.data:
            raise VarietyMismatch("operands live on different spectral data")
        if other.d != self.d:
            raise ValueError("addition needs equal pole orders")
        total = self.numerator + other.numerator
        return MeroFunc(self.data, self.d, total)

    def scale(self, s) -> "MeroFunc":
        return MeroFunc(self.data, self.d, self.numerator.scale(s))

    def __eq__(self, other):
        return (isinstance(other, MeroFunc) and self.data == other.data
                and self.d == other.d and self.numerator == other.numerator)

    def __repr__(self):
        tvar = "w" if self.data.kind == "omega" else "t"
        return f"MeroFunc(d={self.d}, numerator={self.numerator.text(tvar)})"


def check_descent(m: MeroFunc) -> bool:
    """Exact coefficient comparison of the descent identity."""
    return not m.descent_defect()


def require_admissible(m: MeroFunc) -> MeroFunc:
    defect = m.descent_defect()
    if defect:
        alpha = sorted(defect)[0]
        raise NotAdmissible(
            f"descent identity fails at monomial {alpha} "
            f"(coefficient {defect[alpha]})")
    return m


def mero_one(data, d: int = 1) -> MeroFunc:
    """The constant function 1 written with pole order d: f^d / f^d."""
    return MeroFunc(data, d, data.pole_form ** d)


def mero_basis(data, d: int):
    """Echelon basis of the numerators of pole order <= d functions.

    The dimension is d * C(d+n-1, n-1); the span always contains
    ``pole_form ** d`` (the constant function 1).
    """
    n = data.n
    factor = data.glue_scale ** d
    cols = bidegree_monomials(n, d, d)
    alphas = t_monomials(n, d)
    alpha_index = {a: r for r, a in enumerate(alphas)}
    rows = [[ZERO] * len(cols) for _ in alphas]
    for ci, (j, alpha) in enumerate(cols):
        mono = BiForm.monomial(n, d, d, j, alpha, ONE)
        for beta, c in mono.restrict_z((ONE, ZERO)).items():
            r = alpha_index[beta]
            rows[r][ci] = rows[r][ci] + c
        if data.kind == "gamma":
            d2 = mono.subst_t(data.P).restrict_z((ZERO, ONE))
        else:
            d2 = mono.swap_factors().restrict_z((ZERO, ONE))
        for beta, c in d2.items():
            r = alpha_index[beta]
            rows[r][ci] = rows[r][ci] - factor * c
    kernel = linalg.nullspace(rows, len(cols), ONE)
    out = []
    for vec in kernel:
        coeffs = {key: v for key, v in zip(cols, vec) if not v.is_zero}
        out.append(MeroFunc(data, d, BiForm(n, d, d, coeffs)))
    return out


def mero_dimension(n: int, d: int) -> int:
    return d * comb(d + n - 1, n - 1)


def mero_span_contains(basis, target: MeroFunc) -> bool:
    """Exact membership of a function in the span of same-order functions."""
    cols = bidegree_monomials(target.data.n, target.d, target.d)
    vectors = [[m.numerator.coeffs.get(key, ZERO) for key in cols]
               for m in basis]
    tvec = [target.numerator.coeffs.get(key, ZERO) for key in cols]
    return linalg.span_contains(vectors, tvec, ONE)
