"""The differential coefficient field K of rational functions in one
exponential.

``q`` formally stands for ``exp(c_1*x_1 + ... + c_n*x_n)`` with fixed
Gaussian-rational weights ``c``; the weight vector is the
:class:`ExpContext`.  The coordinate derivations act by

    d/dx_j (q^m) = m * c_j * q^m,

extended by linearity and the quotient rule, so K is closed under all of
them and every identity can be decided exactly.

Canonical form of an element: ``q^minexp * num(q) / den(q)`` where ``num``
and ``den`` are ordinary polynomials with nonzero constant terms, ``den``
is monic, and ``gcd(num, den) = 1``.  Any power of q dividing a raw
denominator is shifted into ``minexp``, so structural equality of the
stored data is equality in the field.

When every weight is zero, q would be ``exp(0) = 1``; such a context is
*constant* and all values collapse to Gaussian rationals (the q symbol
never appears).
"""

from __future__ import annotations

from . import qpoly
from .errors import ContextMismatch
from .gaussq import GaussQ, ONE, ZERO

_GQ_ONE = (ONE,)


class ExpContext:
    """Derivation weights: d/dx_j q = c_j * q."""

    __slots__ = ("c",)

    def __init__(self, c):
        weights = []
        for v in c:
            weights.append(v if isinstance(v, GaussQ) else GaussQ(v))
        self.c = tuple(weights)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def is_constant(self) -> bool:
        return all(w.is_zero for w in self.c)

    def __eq__(self, other):
        return isinstance(other, ExpContext) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"ExpContext({[str(w) for w in self.c]})"


class ExpRat:
    """Element of K in canonical form.  Immutable; all operations pure."""

    __slots__ = ("ctx", "minexp", "num", "den")

    def __init__(self, ctx, minexp, num, den):
        """Build from raw Laurent data and canonicalize.

        ``num`` and ``den`` are ascending coefficient sequences of the raw
        numerator and denominator polynomials, both implicitly multiplied
        by ``q**minexp`` over 1 (the shift applies to the numerator).
        """
        num = qpoly.trim(num)
        den = qpoly.trim(den)
        if qpoly.is_zero(den):
            raise ZeroDivisionError("zero denominator in coefficient field")
        if ctx.is_constant:
            # q == 1: evaluate both polynomials at 1.
            nval = qpoly.eval_at(num, ONE)
            dval = qpoly.eval_at(den, ONE)
            if dval.is_zero:
                raise ZeroDivisionError("zero denominator in coefficient field")
            v = nval / dval
            self.ctx = ctx
            self.minexp = 0
            self.num = () if v.is_zero else (v,)
            self.den = _GQ_ONE
            return
        if qpoly.is_zero(num):
            self.ctx = ctx
            self.minexp = 0
            self.num = ()
            self.den = _GQ_ONE
            return
        # Shift powers of q out of both polynomials.
        ln = 0
        while num[ln].is_zero:
            ln += 1
        ld = 0
        while den[ld].is_zero:
            ld += 1
        minexp += ln - ld
        num = num[ln:]
        den = den[ld:]
        if len(num) > 1 and len(den) > 1:
            g = qpoly.gcd(num, den)
            if qpoly.degree(g) > 0:
                num, _ = qpoly.divmod_(num, g)
                den, _ = qpoly.divmod_(den, g)
        lc = den[-1]
        if lc != 1:
            num = tuple(c / lc for c in num)
            den = tuple(c / lc for c in den)
        self.ctx = ctx
        self.minexp = minexp
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------

    @classmethod
    def const(cls, ctx, value) -> "ExpRat":
        g = value if isinstance(value, GaussQ) else GaussQ(value)
        return cls(ctx, 0, (g,), _GQ_ONE)

    @classmethod
    def zero(cls, ctx) -> "ExpRat":
        return cls(ctx, 0, (), _GQ_ONE)

    @classmethod
    def one(cls, ctx) -> "ExpRat":
        return cls.const(ctx, ONE)

    @classmethod
    def q_power(cls, ctx, m: int) -> "ExpRat":
        return cls(ctx, m, _GQ_ONE, _GQ_ONE)

    @classmethod
    def from_laurent(cls, ctx, terms) -> "ExpRat":
        """Build from a mapping of q-exponent -> coefficient."""
        if not terms:
            return cls.zero(ctx)
        lo = min(terms)
        hi = max(terms)
        coeffs = [ZERO] * (hi - lo + 1)
        for e, c in terms.items():
            g = c if isinstance(c, GaussQ) else GaussQ(c)
            coeffs[e - lo] = coeffs[e - lo] + g
        return cls(ctx, lo, coeffs, _GQ_ONE)

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return len(self.num) == 0

    def __bool__(self):
        return not self.is_zero

    @property
    def weight(self) -> int:
        """Size proxy used for pivot selection in exact elimination."""
        return len(self.num) + len(self.den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ExpRat):
            if other.ctx != self.ctx:
                raise ContextMismatch(
                    "operands live over different exponential contexts")
            return other
        if isinstance(other, (GaussQ, int)):
            return ExpRat.const(self.ctx, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            shift = min(self.minexp, o.minexp)
            a = _qshift(self.num, self.minexp - shift)
            b = _qshift(o.num, o.minexp - shift)
            return ExpRat(self.ctx, shift, qpoly.add(a, b), self.den)
        da, db = self.den, o.den
        if len(da) > 1 and len(db) > 1:
            g = qpoly.gcd(da, db)
            if qpoly.degree(g) > 0:
                da, _ = qpoly.divmod_(da, g)
                db, _ = qpoly.divmod_(db, g)
        shift = min(self.minexp, o.minexp)
        a = _qshift(qpoly.mul(self.num, db), self.minexp - shift)
        b = _qshift(qpoly.mul(o.num, da), o.minexp - shift)
        return ExpRat(self.ctx, shift, qpoly.add(a, b),
                      qpoly.mul(self.den, db))

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(ExpRat)
        out.ctx = self.ctx
        out.minexp = self.minexp
        out.num = qpoly.neg(self.num)
        out.den = self.den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # Cross-cancel before multiplying: both operands are reduced, so
        # the only common factors pair one numerator with the other
        # denominator.  This keeps the constructor's gcd trivial.
        na, da = self.num, self.den
        nb, db = o.num, o.den
        if len(na) > 1 and len(db) > 1:
            g = qpoly.gcd(na, db)
            if qpoly.degree(g) > 0:
                na, _ = qpoly.divmod_(na, g)
                db, _ = qpoly.divmod_(db, g)
        if len(nb) > 1 and len(da) > 1:
            g = qpoly.gcd(nb, da)
            if qpoly.degree(g) > 0:
                nb, _ = qpoly.divmod_(nb, g)
                da, _ = qpoly.divmod_(da, g)
        return ExpRat(self.ctx, self.minexp + o.minexp,
                      qpoly.mul(na, nb), qpoly.mul(da, db))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero in coefficient field")
        na, da = self.num, self.den
        nb, db = o.num, o.den
        if len(na) > 1 and len(nb) > 1:
            g = qpoly.gcd(na, nb)
            if qpoly.degree(g) > 0:
                na, _ = qpoly.divmod_(na, g)
                nb, _ = qpoly.divmod_(nb, g)
        if len(da) > 1 and len(db) > 1:
            g = qpoly.gcd(da, db)
            if qpoly.degree(g) > 0:
                da, _ = qpoly.divmod_(da, g)
                db, _ = qpoly.divmod_(db, g)
        return ExpRat(self.ctx, self.minexp - o.minexp,
                      qpoly.mul(na, db), qpoly.mul(da, nb))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (ExpRat.one(self.ctx) / self) ** (-e)
        out = ExpRat.one(self.ctx)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derive(self, j: int) -> "ExpRat":
        """Apply the coordinate derivation d/dx_j.

        With theta = q d/dq this is c_j * theta, acting on q^m*num/den by
        the quotient rule; the q-shift contributes the Euler term m*num.
        """
        if not 0 <= j < self.ctx.n:
            raise IndexError(f"variable index {j} out of range")
        cj = self.ctx.c[j]
        if cj.is_zero or self.is_zero:
            return ExpRat.zero(self.ctx)
        m = GaussQ(self.minexp)
        theta_num = qpoly.add(qpoly.scale(self.num, m),
                              _qshift(qpoly.deriv(self.num), 1))
        theta = qpoly.sub(qpoly.mul(theta_num, self.den),
                          qpoly.mul(self.num, _qshift(qpoly.deriv(self.den), 1)))
        return ExpRat(self.ctx, self.minexp,
                      qpoly.scale(theta, cj),
                      qpoly.mul(self.den, self.den))

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (GaussQ, int)):
            other = ExpRat.const(self.ctx, other)
        if not isinstance(other, ExpRat):
            return NotImplemented
        return (self.ctx == other.ctx and self.minexp == other.minexp
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.ctx, self.minexp, self.num, self.den))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        """Human-readable q-notation, e.g. ``(-i - i*q)/(-1 + q)``."""
        if self.is_zero:
            return "0"
        num = _poly_text(self.num, self.minexp)
        if self.den == _GQ_ONE:
            return num
        return f"({num})/({_poly_text(self.den, 0)})"

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "minexp": self.minexp,
            "num_coeffs": [c.to_strings() for c in self.num],
            "den_coeffs": [c.to_strings() for c in self.den],
        }

    @classmethod
    def from_json(cls, ctx, obj) -> "ExpRat":
        num = [GaussQ.from_strings(p) for p in obj["num_coeffs"]]
        den = [GaussQ.from_strings(p) for p in obj["den_coeffs"]]
        return cls(ctx, obj["minexp"], num, den)


def _qshift(p, k: int):
    """Multiply an ascending coefficient sequence by q**k (k >= 0)."""
    if not p or k == 0:
        return p
    return (ZERO,) * k + tuple(p)


def _poly_text(coeffs, minexp: int) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c.is_zero:
            continue
        e = k + minexp
        cs = str(c)
        if ("+" in cs[1:]) or ("-" in cs[1:]):
            cs = f"({cs})"
        if e == 0:
            parts.append(cs)
        else:
            qs = "q" if e == 1 else f"q^{e}"
            parts.append(qs if cs == "1" else f"-{qs}" if cs == "-1" else f"{cs}*{qs}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")
