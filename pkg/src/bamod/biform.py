"""Bihomogeneous polynomial algebra in (z1, z2) x (t1, ..., tn).

A :class:`BiForm` of bidegree ``(dz, dt)`` stores the coefficients of

    sum_{0 <= j <= dz, |alpha| = dt}  h_{j,alpha} * z1^j * z2^(dz-j) * t^alpha

in a sparse map keyed by ``(j, alpha)``.  Coefficients are either Gaussian
rationals or exponential-rational field elements; zero coefficients are
never stored.  The monomial order used everywhere (serialization, linear
system columns) is j descending, then alpha ascending lexicographically.

For the two-factor variant of the construction the same container is used
with n = 2 and (w1, w2) playing the role of (t1, t2); the extra
:meth:`BiForm.swap_factors` primitive exchanges the two variable blocks.
"""

from __future__ import annotations

from .errors import ArityMismatch, ConfigError
from .exprat import ExpRat
from .gaussq import GaussQ, ONE, parse_gaussq
from . import linalg


def t_monomials(n: int, d: int):
    """All exponent tuples of total degree d, ascending lexicographically."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d + 1):
        for rest in t_monomials(n - 1, d - first):
            out.append((first,) + rest)
    out.sort()
    return out


def bidegree_monomials(n: int, dz: int, dt: int):
    """All (j, alpha) keys in the canonical monomial order."""
    alphas = t_monomials(n, dt)
    return [(j, alpha) for j in range(dz, -1, -1) for alpha in alphas]


class MatrixP:
    """Invertible Gaussian-rational matrix acting on the t-variables."""

    __slots__ = ("rows", "_inv")

    def __init__(self, rows):
        mat = tuple(tuple(v if isinstance(v, GaussQ) else GaussQ(v) for v in r)
                    for r in rows)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise ArityMismatch("substitution matrix must be square")
        if linalg.gq_det(mat).is_zero:
            raise ValueError("substitution matrix is singular")
        self.rows = mat
        self._inv = None

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply_vec(self, vec):
        return tuple(sum((r[k] * vec[k] for k in range(self.n)), GaussQ(0))
                     for r in self.rows)

    def inverse(self) -> "MatrixP":
        if self._inv is None:
            self._inv = MatrixP(linalg.gq_inverse(self.rows))
        return self._inv

    def __eq__(self, other):
        return isinstance(other, MatrixP) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MatrixP({[[str(v) for v in r] for r in self.rows]})"


class BiForm:
    """Sparse bihomogeneous form; immutable by convention."""

    __slots__ = ("n", "dz", "dt", "coeffs")

    def __init__(self, n, dz, dt, coeffs):
        clean = {}
        for (j, alpha), c in coeffs.items():
            alpha = tuple(alpha)
            if not (0 <= j <= dz) or len(alpha) != n or sum(alpha) != dt:
                raise ArityMismatch(
                    f"monomial ({j}, {alpha}) outside bidegree ({dz}, {dt})")
            if c.is_zero:
                continue
            clean[(j, alpha)] = c
        self.n = n
        self.dz = dz
        self.dt = dt
        self.coeffs = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n, dz, dt) -> "BiForm":
        return cls(n, dz, dt, {})

    @classmethod
    def monomial(cls, n, dz, dt, j, alpha, coeff) -> "BiForm":
        return cls(n, dz, dt, {(j, tuple(alpha)): coeff})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        """Coefficients in the canonical monomial order."""
        return sorted(self.coeffs.items(),
                      key=lambda kv: (self.dz - kv[0][0], kv[0][1]))

    def __eq__(self, other):
        return (isinstance(other, BiForm) and self.n == other.n
                and self.dz == other.dz and self.dt == other.dt
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return self.text()

    # -- arithmetic --------------------------------------------------------

    def _check_shape(self, other):
        if (self.n, self.dz, self.dt) != (other.n, other.dz, other.dt):
            raise ArityMismatch("forms of different bidegree cannot be added")

    def __add__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        self._check_shape(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        return BiForm(self.n, self.dz, self.dt, out)

    def __neg__(self):
        return BiForm(self.n, self.dz, self.dt,
                      {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        if self.n != other.n:
            raise ArityMismatch("forms in different variable counts")
        out = {}
        for (j1, a1), c1 in self.coeffs.items():
            for (j2, a2), c2 in other.coeffs.items():
                key = (j1 + j2, tuple(x + y for x, y in zip(a1, a2)))
                term = c1 * c2
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        return BiForm(self.n, self.dz + other.dz, self.dt + other.dt, out)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = BiForm(self.n, 0, 0, {(0, (0,) * self.n): ONE})
        for _ in range(e):
            out = out * self
        return out

    def scale(self, s) -> "BiForm":
        if hasattr(s, "is_zero") and s.is_zero:
            return BiForm.zero(self.n, self.dz, self.dt)
        return BiForm(self.n, self.dz, self.dt,
                      {k: c * s for k, c in self.coeffs.items()})

    def map_coeffs(self, fn) -> "BiForm":
        return BiForm(self.n, self.dz, self.dt,
                      {k: fn(c) for k, c in self.coeffs.items()})

    # -- evaluation and substitution ----------------------------------------

    def restrict_z(self, z) -> dict:
        """Substitute (z1, z2); returns {alpha: coefficient} of the degree-dt
        homogeneous polynomial in t."""
        z1, z2 = (v if isinstance(v, GaussQ) else GaussQ(v) for v in z)
        out = {}
        for (j, alpha), c in self.coeffs.items():
            factor = z1 ** j * z2 ** (self.dz - j)
            if factor.is_zero:
                continue
            term = c * factor
            prev = out.get(alpha)
            acc = term if prev is None else prev + term
            if acc.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = acc
        return out

    def subst_t(self, M) -> "BiForm":
        """Replace t by M*t; the bidegree is preserved."""
        rows = M.rows if isinstance(M, MatrixP) else tuple(tuple(r) for r in M)
        n = self.n
        lins = []
        for m in range(n):
            lin = {}
            for l in range(n):
                c = rows[m][l]
                if not c.is_zero:
                    unit = tuple(1 if idx == l else 0 for idx in range(n))
                    lin[unit] = c
            lins.append(lin)
        out = {}
        for (j, alpha), coeff in self.coeffs.items():
            expanded = {(0,) * n: ONE}
            for m, e in enumerate(alpha):
                for _ in range(e):
                    expanded = _tpoly_mul(expanded, lins[m], n)
            for beta, c in expanded.items():
                key = (j, beta)
                term = coeff * c
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        return BiForm(self.n, self.dz, self.dt, out)

    def swap_factors(self) -> "BiForm":
        """Exchange the z-block and the two-variable t-block."""
        if self.n != 2 or self.dz != self.dt:
            raise ArityMismatch("factor swap needs n = 2 and equal bidegrees")
        out = {}
        for (j, alpha), c in self.coeffs.items():
            out[(alpha[0], (j, self.dz - j))] = c
        return BiForm(self.n, self.dz, self.dt, out)

    # -- coefficient kinds ---------------------------------------------------

    @property
    def kind(self) -> str:
        for c in self.coeffs.values():
            return "exprat" if isinstance(c, ExpRat) else "gaussq"
        return "any"

    def to_exprat(self, ctx) -> "BiForm":
        """Lift Gaussian-rational coefficients into the exponential field."""
        if self.kind == "exprat":
            return self
        return self.map_coeffs(lambda c: ExpRat.const(ctx, c))

    # -- text ----------------------------------------------------------------

    def text(self, tvar: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (j, alpha), c in self.items():
            factors = []
            if j:
                factors.append("z1" if j == 1 else f"z1^{j}")
            if self.dz - j:
                e = self.dz - j
                factors.append("z2" if e == 1 else f"z2^{e}")
            for m, e in enumerate(alpha):
                if e:
                    v = f"{tvar}{m + 1}"
                    factors.append(v if e == 1 else f"{v}^{e}")
            cs = c.text() if isinstance(c, ExpRat) else str(c)
            if any(ch in cs[1:] for ch in "+-*/") or cs.startswith("("):
                cs = f"({cs})"
            if cs == "1" and factors:
                term = "*".join(factors)
            elif cs == "-1" and factors:
                term = "-" + "*".join(factors)
            else:
                term = "*".join([cs] + factors)
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


def _tpoly_mul(poly, lin, n):
    out = {}
    for alpha, c in poly.items():
        for unit, lc in lin.items():
            beta = tuple(x + y for x, y in zip(alpha, unit))
            term = c * lc
            prev = out.get(beta)
            out[beta] = term if prev is None else prev + term
    return out


# ---------------------------------------------------------------------------
# Text parser for forms like "-z1*t1 - z2*t2" or "q^-1*z1*w1 + z1*w2".
# ---------------------------------------------------------------------------

def parse_form(text: str, n=None, ctx=None) -> BiForm:
    """Parse a bihomogeneous form.

    Accepted factors per ``*``-separated term: ``z1``/``z2``, ``t<k>`` or
    ``w<k>`` (aliases for the same block), optional ``^<int>`` powers,
    Gaussian-rational literals (optionally parenthesized), ``i``, and
    ``q``/``q^<int>`` powers (these require ``ctx`` and produce
    exponential-rational coefficients).
    """
    terms = _split_terms(text)
    if not terms:
        raise ConfigError("empty form")
    parsed = []
    tletters = set()
    max_t = 0
    uses_q = False
    for sign, term in terms:
        gq = ONE if sign > 0 else GaussQ(-1)
        qexp = 0
        zpow = [0, 0]
        tpow = {}
        for factor in _split_factors(term):
            if factor in ("z1", "z2") or factor.startswith(("z1^", "z2^")):
                idx = int(factor[1]) - 1
                e = _var_exponent(factor)
                zpow[idx] += e
            elif factor and factor[0] in "tw" and len(factor) > 1 and factor[1].isdigit():
                tletters.add(factor[0])
                var, _, _exp = factor.partition("^")
                k = int(var[1:])
                e = _var_exponent(factor)
                if k < 1:
                    raise ConfigError(f"bad variable {factor!r}")
                max_t = max(max_t, k)
                tpow[k - 1] = tpow.get(k - 1, 0) + e
            elif factor == "q" or factor.startswith("q^"):
                uses_q = True
                qexp += int(factor[2:]) if "^" in factor else 1
            else:
                scalar, qe = _parse_coefficient_factor(factor)
                gq = gq * scalar
                if qe:
                    uses_q = True
                    qexp += qe
        parsed.append((gq, qexp, tuple(zpow), tpow))
    if len(tletters) > 1:
        raise ConfigError("form mixes t- and w-variables")
    if n is None:
        n = max_t if max_t else 2
    if max_t > n:
        raise ConfigError(f"variable index {max_t} exceeds n = {n}")
    if uses_q and ctx is None:
        raise ConfigError("q-coefficients need an exponential context")

    shapes = set()
    coeffs = {}
    for gq, qexp, zpow, tpow in parsed:
        alpha = tuple(tpow.get(k, 0) for k in range(n))
        shapes.add((sum(zpow), sum(alpha)))
        key = (zpow[0], alpha)
        c = ExpRat.const(ctx, gq) * ExpRat.q_power(ctx, qexp) if uses_q else gq
        prev = coeffs.get(key)
        coeffs[key] = c if prev is None else prev + c
    if len(shapes) != 1:
        raise ConfigError("form is not bihomogeneous")
    dz, dt = shapes.pop()
    return BiForm(n, dz, dt, coeffs)


def _split_terms(text: str):
    """Split on top-level +/- (parenthesis and exponent aware)."""
    s = text.strip()
    terms = []
    depth = 0
    start = 0
    sign = 1
    prev_sig = ""
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start and prev_sig not in "^*/+-(":
            chunk = s[start:k].strip()
            if chunk:
                terms.append((sign, chunk))
            sign = 1 if ch == "+" else -1
            start = k + 1
            prev_sig = ""
            continue
        if not ch.isspace():
            prev_sig = ch
    chunk = s[start:].strip()
    if chunk:
        terms.append((sign, chunk))
    # A leading sign on the first chunk.
    out = []
    for sign, chunk in terms:
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:].strip()
        if not chunk:
            raise ConfigError(f"dangling sign in form {text!r}")
        out.append((sign, chunk))
    return out


def _var_exponent(factor: str) -> int:
    if "^" not in factor:
        return 1
    exp = factor.partition("^")[2]
    try:
        e = int(exp)
    except ValueError as exc:
        raise ConfigError(f"bad exponent in {factor!r}") from exc
    if e < 1:
        raise ConfigError(f"variable exponent must be positive in {factor!r}")
    return e


def _parse_coefficient_factor(factor: str):
    """Scalar factor: a Gaussian-rational literal, optionally combined with
    a q-power inside parentheses ("(1/2*q^-1)").  Returns (GaussQ, qexp)."""
    body = factor[1:-1] if factor.startswith("(") and factor.endswith(")") else factor
    qexp = 0
    pieces = body.split("*")
    scalar_text = []
    for piece in pieces:
        piece = piece.strip()
        if piece == "q":
            qexp += 1
        elif piece.startswith("q^"):
            try:
                qexp += int(piece[2:])
            except ValueError as exc:
                raise ConfigError(f"bad factor {factor!r} in form") from exc
        else:
            scalar_text.append(piece)
    scalar = ONE
    for piece in scalar_text:
        try:
            scalar = scalar * parse_gaussq(piece)
        except ValueError as exc:
            raise ConfigError(f"bad factor {factor!r} in form") from exc
    return scalar, qexp


def _split_factors(term: str):
    factors = []
    depth = 0
    start = 0
    for k, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            factors.append(term[start:k].strip())
            start = k + 1
    factors.append(term[start:].strip())
    if any(not f for f in factors):
        raise ConfigError(f"empty factor in term {term!r}")
    return factors
