"""The graded module of eigenfunctions over a spectral datum.

A grade-k element is the function ``h / f^k * exp(sum_j (f_j/f) x_j)``
where h is a bidegree-(k,k) form whose coefficients live in the
exponential-rational field K.  Membership is a single linear identity on
h, obtained by comparing the element's two restrictions to the glued
hypersurfaces:

* one-factor gluing (Γ):   h(1,0,t) = Lambda * A^k * q^(-1) * h(0,1,P(t))
* two-factor gluing (Ω):   h(1,0,t) = Lambda * B^k * q^(-1) * h(t,0,1)

with ``q = exp(c.x)``.  The factor ``Lambda * scale^k * q^(-1)`` follows
for every k from the defining identities of the datum: the pole form
contributes ``scale`` once per pole order when the k-th power of its own
gluing identity is divided out, while the flow ratios each jump by the
constant c_j, so the exponential factor contributes exactly one
``exp(-c.x)`` regardless of k.

Because each constraint row has a lone leading unknown, the solution
space of the gluing identity has dimension exactly k * C(k+n-1, n-1); the
kernel is computed over K and returned in reduced echelon form with
respect to the canonical monomial order, which makes all outputs
deterministic.  A deficient kernel is a genericity failure, never
silently accepted.
"""

from __future__ import annotations

from math import comb

from . import linalg
from .biform import BiForm, bidegree_monomials, t_monomials
from .errors import GenericityFailure, IdentityViolation, VarietyMismatch
from .exprat import ExpRat
from .gaussq import ONE, ZERO
from .spectral import require_generic


def expected_rank(n: int, k: int) -> int:
    """Rank of the grade-k slice over the coefficient field."""
    return k * comb(k + n - 1, n - 1)


def multi_indices(n: int, max_total: int):
    """All derivative multi-indices with |alpha| <= max_total, graded order."""
    out = []
    for total in range(max_total + 1):
        out.extend(t_monomials(n, total))
    return out


class ModuleElement:
    """A grade-k element, carried by its numerator form h."""

    __slots__ = ("data", "k", "h")

    def __init__(self, data, k: int, h: BiForm):
        if k < 1:
            raise ValueError("grade must be a positive integer")
        if (h.n, h.dz, h.dt) != (data.n, k, k):
            raise ValueError(
                f"numerator bidegree {(h.dz, h.dt)} does not match grade {k}")
        self.data = data
        self.k = k
        self.h = h

    # -- the gluing identity --------------------------------------------

    def glue_factor(self) -> ExpRat:
        ctx = self.data.context()
        scale = self.data.Lambda * self.data.glue_scale ** self.k
        return ExpRat.const(ctx, scale) * ExpRat.q_power(ctx, -1)

    def defect(self) -> dict:
        """t-polynomial that must vanish for the element to belong."""
        ctx = self.data.context()
        factor = self.glue_factor()
        d1 = self.h.restrict_z((1, 0))
        if self.data.kind == "gamma":
            d2 = self.h.subst_t(self.data.P).restrict_z((0, 1))
        else:
            d2 = self.h.swap_factors().restrict_z((0, 1))
        out = {a: _as_K(ctx, c) for a, c in d1.items()}
        for a, c in d2.items():
            term = factor * c
            prev = out.get(a)
            acc = -term if prev is None else prev - term
            if acc.is_zero:
                out.pop(a, None)
            else:
                out[a] = acc
        return out

    def is_glued(self) -> bool:
        return not self.defect()

    def check(self):
        defect = self.defect()
        if defect:
            alpha = sorted(defect)[0]
            raise IdentityViolation(f"grade-{self.k}-gluing", alpha,
                                    str(defect[alpha]))
        return self

    # -- module operations ----------------------------------------------

    def derive(self, j: int) -> "ModuleElement":
        """d/dx_j, landing one grade higher: h -> f * dh/dx_j + f_j * h."""
        if not 0 <= j < self.data.nvars:
            raise IndexError(f"variable index {j} out of range")
        pole, flows = self.data.forms_K()
        dh = self.h.map_coeffs(lambda c: c.derive(j))
        return ModuleElement(self.data, self.k + 1,
                             pole * dh + flows[j] * self.h)

    def lift(self, d: int) -> "ModuleElement":
        """Inclusion into grade k + d via h -> h * f^d."""
        if d < 0:
            raise ValueError("lift amount must be non-negative")
        if d == 0:
            return self
        pole, _ = self.data.forms_K()
        return ModuleElement(self.data, self.k + d, self.h * pole ** d)

    def mul_mero(self, lam) -> "ModuleElement":
        """Multiply by a meromorphic function with pole on the pole form."""
        if lam.data != self.data:
            raise VarietyMismatch(
                "meromorphic function lives on different spectral data")
        ctx = self.data.context()
        return ModuleElement(self.data, self.k + lam.d,
                             self.h * lam.numerator.to_exprat(ctx))

    def scale(self, s) -> "ModuleElement":
        return ModuleElement(self.data, self.k, self.h.scale(s))

    def __eq__(self, other):
        return (isinstance(other, ModuleElement) and self.data == other.data
                and self.k == other.k and self.h == other.h)

    def __repr__(self):
        tvar = "w" if self.data.kind == "omega" else "t"
        return f"ModuleElement(grade={self.k}, h={self.h.text(tvar)})"


def _as_K(ctx, c):
    return c if isinstance(c, ExpRat) else ExpRat.const(ctx, c)


def grade_basis(data, k: int, validated: bool = True):
    """Solve the grade-k gluing identity; kernel basis as module elements.

    The basis is in reduced echelon form with respect to the canonical
    monomial order (any other basis of the same span is a K-linear change
    of these generators).
    """
    if validated:
        require_generic(data)
    n = data.n
    ctx = data.context()
    one = ExpRat.one(ctx)
    zero = ExpRat.zero(ctx)
    scale = data.Lambda * data.glue_scale ** k
    factor = ExpRat.const(ctx, scale) * ExpRat.q_power(ctx, -1)
    cols = bidegree_monomials(n, k, k)
    alphas = t_monomials(n, k)
    alpha_index = {a: r for r, a in enumerate(alphas)}
    rows = [[zero] * len(cols) for _ in alphas]
    for ci, (j, alpha) in enumerate(cols):
        mono = BiForm.monomial(n, k, k, j, alpha, ONE)
        for beta, c in mono.restrict_z((1, 0)).items():
            r = alpha_index[beta]
            rows[r][ci] = rows[r][ci] + _as_K(ctx, c)
        if data.kind == "gamma":
            d2 = mono.subst_t(data.P).restrict_z((0, 1))
        else:
            d2 = mono.swap_factors().restrict_z((0, 1))
        for beta, c in d2.items():
            r = alpha_index[beta]
            rows[r][ci] = rows[r][ci] - factor * c
    kernel = linalg.nullspace(rows, len(cols), one)
    want = expected_rank(n, k)
    if len(kernel) != want:
        raise GenericityFailure(
            f"grade-{k} kernel has dimension {len(kernel)}, expected {want}")
    out = []
    for vec in kernel:
        coeffs = {key: v for key, v in zip(cols, vec) if not v.is_zero}
        out.append(ModuleElement(data, k, BiForm(n, k, k, coeffs)))
    return out


def coefficient_vector(h: BiForm, cols=None):
    """Coefficients of a form in the canonical monomial order (K-valued)."""
    if cols is None:
        cols = bidegree_monomials(h.n, h.dz, h.dt)
    return [h.coeffs.get(key) for key in cols]


def in_span(forms, target: BiForm) -> bool:
    """Exact membership of a form in the K-span of given forms."""
    if target.is_zero:
        return True
    ctx = None
    for bf in forms:
        for c in bf.coeffs.values():
            if isinstance(c, ExpRat):
                ctx = c.ctx
                break
        if ctx is not None:
            break
    for c in target.coeffs.values():
        if isinstance(c, ExpRat):
            ctx = c.ctx
            break
    if ctx is None:
        one = ONE
        zero = ZERO
        conv = lambda c: zero if c is None else c
    else:
        one = ExpRat.one(ctx)
        zero = ExpRat.zero(ctx)
        conv = lambda c: zero if c is None else _as_K(ctx, c)
    cols = bidegree_monomials(target.n, target.dz, target.dt)
    vectors = [[conv(c) for c in coefficient_vector(bf, cols)] for bf in forms]
    tvec = [conv(c) for c in coefficient_vector(target, cols)]
    return linalg.span_contains(vectors, tvec, one)


class ModuleBasis:
    """n grade-1 elements used as a (candidate) free basis.

    Construction verifies the count, the gluing identity of every element
    and their independence over K.  Freeness at higher grades is the
    statement that the images of the derived elements span each grade
    slice; :meth:`verify_freeness` checks it explicitly, and the
    coordinate solver reports any rank deficiency it meets.
    """

    def __init__(self, data, elements):
        elements = list(elements)
        if len(elements) != data.size:
            raise ValueError(
                f"expected {data.size} basis elements, got {len(elements)}")
        for el in elements:
            if el.data != data:
                raise VarietyMismatch("basis element on different data")
            if el.k != 1:
                raise ValueError("basis elements must have grade 1")
            el.check()
        ctx = data.context()
        cols = bidegree_monomials(data.n, 1, 1)
        zero = ExpRat.zero(ctx)
        rows = [[el.h.coeffs.get(key, zero) for key in cols]
                for el in elements]
        if linalg.rank(rows) != len(elements):
            raise GenericityFailure("basis elements dependent over K")
        self.data = data
        self.elements = elements
        self._deriv_cache = {}
        self._pole_powers = {}
        self._expansion_cache = {}

    @property
    def size(self) -> int:
        return len(self.elements)

    def derived_numerator(self, i: int, alpha) -> BiForm:
        """Numerator of d^alpha psi_i at grade 1 + |alpha| (cached)."""
        alpha = tuple(alpha)
        key = (i, alpha)
        cached = self._deriv_cache.get(key)
        if cached is not None:
            return cached
        if sum(alpha) == 0:
            num = self.elements[i].h
        else:
            j = next(m for m, e in enumerate(alpha) if e > 0)
            parent = tuple(e - 1 if m == j else e for m, e in enumerate(alpha))
            pnum = self.derived_numerator(i, parent)
            pole, flows = self.data.forms_K()
            num = pole * pnum.map_coeffs(lambda c: c.derive(j)) + flows[j] * pnum
        self._deriv_cache[key] = num
        return num

    def pole_power(self, d: int) -> BiForm:
        cached = self._pole_powers.get(d)
        if cached is None:
            pole, _ = self.data.forms_K()
            cached = pole ** d
            self._pole_powers[d] = cached
        return cached

    def expansion_system(self, k: int):
        """Factored coordinate system of grade k, cached per grade.

        The coefficient matrix A of the derived-basis expansion at grade k
        is fixed, so it is row-reduced once against an identity block:
        rref([A | I]) records the reducing transform T alongside the
        pivots.  Every later coordinate solve is then a single
        application of T to the target vector: pivot rows in the A-block
        read off the unique coefficients, rows whose pivot fell into the
        I-block are pure consistency constraints (the target lies in the
        module exactly when they evaluate to zero), and uniqueness is
        the statement that every A-column carries a pivot -- checked
        here once, as the freeness witness of this grade.
        """
        cached = self._expansion_cache.get(k)
        if cached is not None:
            return cached
        ctx = self.data.context()
        zero = ExpRat.zero(ctx)
        one = ExpRat.one(ctx)
        unknowns = [(i, alpha) for i in range(self.size)
                    for alpha in multi_indices(self.data.nvars, k - 1)]
        cols = bidegree_monomials(self.data.n, k, k)
        columns = []
        for i, alpha in unknowns:
            num = self.derived_numerator(i, alpha)
            lifted = num * self.pole_power(k - 1 - sum(alpha))
            columns.append([lifted.coeffs.get(key, zero) for key in cols])
        n_unk = len(unknowns)
        n_row = len(cols)
        aug = [[columns[u][r] for u in range(n_unk)]
               + [one if j == r else zero for j in range(n_row)]
               for r in range(n_row)]
        rows, pivots = linalg.rref(aug, n_unk + n_row)
        solver_rows = []
        a_pivots = 0
        for r, pc in enumerate(pivots):
            transform = rows[r][n_unk:]
            if pc < n_unk:
                a_pivots += 1
                solver_rows.append((pc, transform))
            else:
                solver_rows.append((None, transform))
        free = a_pivots < n_unk
        cached = (unknowns, cols, solver_rows, free, zero)
        self._expansion_cache[k] = cached
        return cached

    def solve_coordinates(self, k: int, rhs):
        """Unique coordinates of a grade-k coefficient vector over the
        derived basis elements; None when the vector is not in the span.
        Raises GenericityFailure when coordinates are not unique."""
        unknowns, _cols, solver_rows, free, zero = self.expansion_system(k)
        if free:
            raise GenericityFailure(
                f"coordinate system at grade {k} is singular")
        sol = [zero] * len(unknowns)
        for pc, transform in solver_rows:
            acc = zero
            for t, b in zip(transform, rhs):
                if not (t.is_zero or b.is_zero):
                    acc = acc + t * b
            if pc is None:
                if not acc.is_zero:
                    return None
            else:
                sol[pc] = acc
        return sol

    def verify_freeness(self, k_max: int) -> bool:
        """Rank check: do the derived elements of order < k span grade k,
        for every k up to k_max?"""
        for k in range(1, k_max + 1):
            cols = bidegree_monomials(self.data.n, k, k)
            ctx = self.data.context()
            zero = ExpRat.zero(ctx)
            vectors = []
            for i in range(self.size):
                for alpha in multi_indices(self.data.nvars, k - 1):
                    num = self.derived_numerator(i, alpha)
                    lifted = num * self.pole_power(k - 1 - sum(alpha))
                    vectors.append([lifted.coeffs.get(key, zero)
                                    for key in cols])
            if linalg.rank(vectors) != expected_rank(self.data.n, k):
                return False
        return True
