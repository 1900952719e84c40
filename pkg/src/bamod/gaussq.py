"""Exact Gaussian-rational scalars.

A :class:`GaussQ` is a complex number ``a + b*i`` whose real and imaginary
parts are arbitrary-precision rationals (``fractions.Fraction`` keeps them
in lowest terms with positive denominators).  All arithmetic is exact and
equality is structural, so these scalars can serve as the ground field of
every computation in the package.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


_F0 = Fraction(0)


def _mk(re: Fraction, im: Fraction) -> "GaussQ":
    """Internal constructor bypassing coercion (operands already exact)."""
    g = GaussQ.__new__(GaussQ)
    g.re = re
    g.im = im
    return g


class GaussQ:
    """Gaussian rational ``re + im*i`` with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    # -- basic predicates -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussQ(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o.re, o.im
        if not b:
            if not d:
                return _mk(a * c, _F0)
            return _mk(a * c, a * d)
        if not d:
            return _mk(a * c, b * c)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o.re, o.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return _mk(a / c, b / c)
        n = c * c + d * d
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return _mk((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (ONE / self) ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussQ({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gaussq(self)

    # -- serialization -----------------------------------------------------

    def to_strings(self):
        """Four decimal integer strings: re_num, re_den, im_num, im_den."""
        return [str(self.re.numerator), str(self.re.denominator),
                str(self.im.numerator), str(self.im.denominator)]

    @classmethod
    def from_strings(cls, parts) -> "GaussQ":
        rn, rd, im_n, im_d = (int(p) for p in parts)
        return cls(Fraction(rn, rd), Fraction(im_n, im_d))


ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)


def format_gaussq(g: GaussQ) -> str:
    """Render in the ``a/b+c/d i`` style accepted by :func:`parse_gaussq`."""
    if not g.im:
        return str(g.re)
    if g.im == 1:
        im = "i"
    elif g.im == -1:
        im = "-i"
    else:
        im = f"{g.im}i"
    if not g.re:
        return im
    if im.startswith("-"):
        return f"{g.re}-{im[1:]}"
    return f"{g.re}+{im}"


def parse_gaussq(text: str) -> GaussQ:
    """Parse ``a/b+c/d i`` style literals ("1", "-2/3", "i", "1/2-1/3i")."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian-rational literal")
    if "i" not in s:
        return GaussQ(Fraction(s))
    if not s.endswith("i"):
        raise ValueError(f"bad Gaussian-rational literal {text!r}")
    body = s[:-1]
    # Split off the real part at the last top-level sign (not the leading one
    # and not a sign inside the imaginary coefficient's fraction).
    split = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            split = k
            break
    if split > 0:
        re_part, im_part = body[:split], body[split:]
    else:
        re_part, im_part = "", body
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    re = Fraction(re_part) if re_part else Fraction(0)
    return GaussQ(re, im)
