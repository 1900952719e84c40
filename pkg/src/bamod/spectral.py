"""Spectral data for the two rational varieties and its exact validation.

A Γ-type datum glues the two hypersurfaces ``(1:0) x CP^(n-1)`` and
``(0:1) x CP^(n-1)`` of ``CP^1 x CP^(n-1)`` through an invertible map P
acting on the t-variables.  An Ω-type datum (n = 2) glues ``(1:0, t)``
with ``(t, 0:1)`` across the two factors of ``CP^1 x CP^1``.  In both
cases the datum carries a bidegree-(1,1) pole form (f resp. g), a gluing
scale (A resp. B), a module scale Lambda, and one flow form per variable
whose ratio with the pole form jumps by a constant c_i across the glued
hypersurfaces.

Everything here is decided exactly:

* the defining identities of the pole and flow forms are expanded as
  polynomials in t and compared coefficient by coefficient;
* the genericity hypotheses (distinct eigenvalues of P, nonvanishing of
  the pole form on eigenvectors, squarefree flow determinants, and for Ω
  the nonvanishing of the basis determinant at the pole-curve
  intersection points) are decided by gcd, discriminant and resultant
  computations over the Gaussian rationals -- no eigenvector coordinates
  or algebraic extensions are ever materialized.

Gluing points are required pre-normalized to (1:0) and (0:1); data in any
other coordinate system is rejected by construction (there is simply no
slot for other gluing points), which keeps every formula in the shape
used throughout the package.

Genericity failures are reported, never repaired: perturbing the data
would silently change the caller's spectral variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from . import linalg, qpoly
from .biform import BiForm, MatrixP, t_monomials
from .errors import GenericityFailure, IdentityViolation, PreconditionViolated
from .exprat import ExpContext, ExpRat
from .gaussq import GaussQ, ONE, ZERO


# ---------------------------------------------------------------------------
# t-polynomial helpers (dict alpha -> coefficient)
# ---------------------------------------------------------------------------

def _tp_scale(d, s):
    return {a: c * s for a, c in d.items()}


def _tp_sub(a, b):
    out = dict(a)
    for k, c in b.items():
        prev = out.get(k)
        acc = -c if prev is None else prev - c
        if acc.is_zero:
            out.pop(k, None)
        else:
            out[k] = acc
    return out


def _raise_if_nonzero(defect: dict, identity: str):
    for alpha in sorted(defect):
        c = defect[alpha]
        if not c.is_zero:
            raise IdentityViolation(identity, alpha, str(c))


def gamma_transport(P: MatrixP, A: GaussQ, bf: BiForm) -> dict:
    """h(1,0,t) - A * h(0,1,P(t)) as a homogeneous t-polynomial."""
    d1 = bf.restrict_z((ONE, ZERO))
    d2 = bf.subst_t(P).restrict_z((ZERO, ONE))
    return _tp_sub(d1, _tp_scale(d2, A))


def omega_transport(B: GaussQ, bf: BiForm) -> dict:
    """h(1,0,t) - B * h(t,0,1) as a homogeneous t-polynomial."""
    d1 = bf.restrict_z((ONE, ZERO))
    d2 = bf.swap_factors().restrict_z((ZERO, ONE))
    return _tp_sub(d1, _tp_scale(d2, B))


# ---------------------------------------------------------------------------
# data containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowForm:
    """A bidegree-(1,1) form whose pole-form ratio jumps by the constant c."""
    form: BiForm
    c: GaussQ


class GammaData:
    """Complete spectral datum on the one-factor gluing of CP^1 x CP^(n-1)."""

    kind = "gamma"

    def __init__(self, n, P, A, Lambda, f, flows):
        if not isinstance(P, MatrixP):
            P = MatrixP(P)
        A = A if isinstance(A, GaussQ) else GaussQ(A)
        Lambda = Lambda if isinstance(Lambda, GaussQ) else GaussQ(Lambda)
        if P.n != n:
            raise ValueError("substitution matrix size differs from n")
        if A.is_zero:
            raise ValueError("gluing scale A must be nonzero")
        if (f.n, f.dz, f.dt) != (n, 1, 1):
            raise ValueError("pole form must be bidegree (1,1) in n variables")
        flows = tuple(fl if isinstance(fl, FlowForm) else FlowForm(*fl)
                      for fl in flows)
        if len(flows) != n:
            raise ValueError(f"expected {n} flow forms, got {len(flows)}")
        for fl in flows:
            if (fl.form.n, fl.form.dz, fl.form.dt) != (n, 1, 1):
                raise ValueError("flow forms must be bidegree (1,1)")
        self.n = n
        self.P = P
        self.A = A
        self.Lambda = Lambda
        self.f = f
        self.flows = flows
        self._ctx = None
        self._report = None
        self._forms_K = None

    @property
    def size(self) -> int:
        """Rank of the free module this datum produces."""
        return self.n

    @property
    def nvars(self) -> int:
        return self.n

    @property
    def pole_form(self) -> BiForm:
        return self.f

    @property
    def glue_scale(self) -> GaussQ:
        return self.A

    def context(self) -> ExpContext:
        if self._ctx is None:
            self._ctx = ExpContext([fl.c for fl in self.flows])
        return self._ctx

    def forms_K(self):
        """Pole and flow forms lifted to exponential-rational coefficients."""
        if self._forms_K is None:
            ctx = self.context()
            self._forms_K = (self.f.to_exprat(ctx),
                             tuple(fl.form.to_exprat(ctx) for fl in self.flows))
        return self._forms_K

    def transport(self, bf: BiForm) -> dict:
        return gamma_transport(self.P, self.A, bf)

    def __eq__(self, other):
        return (isinstance(other, GammaData) and self.n == other.n
                and self.P == other.P and self.A == other.A
                and self.Lambda == other.Lambda and self.f == other.f
                and self.flows == other.flows)


class OmegaData:
    """Spectral datum on the two-factor gluing of CP^1 x CP^1."""

    kind = "omega"
    n = 2

    def __init__(self, B, Lambda, g, flows):
        B = B if isinstance(B, GaussQ) else GaussQ(B)
        Lambda = Lambda if isinstance(Lambda, GaussQ) else GaussQ(Lambda)
        if B.is_zero:
            raise ValueError("gluing scale B must be nonzero")
        if (g.n, g.dz, g.dt) != (2, 1, 1):
            raise ValueError("pole form must be bidegree (1,1) with n = 2")
        flows = tuple(fl if isinstance(fl, FlowForm) else FlowForm(*fl)
                      for fl in flows)
        if len(flows) != 2:
            raise ValueError("expected exactly 2 flow forms")
        for fl in flows:
            if (fl.form.n, fl.form.dz, fl.form.dt) != (2, 1, 1):
                raise ValueError("flow forms must be bidegree (1,1)")
        self.B = B
        self.Lambda = Lambda
        self.g = g
        self.flows = flows
        self._ctx = None
        self._report = None
        self._forms_K = None

    @property
    def size(self) -> int:
        return 2

    @property
    def nvars(self) -> int:
        return 2

    @property
    def pole_form(self) -> BiForm:
        return self.g

    @property
    def glue_scale(self) -> GaussQ:
        return self.B

    def context(self) -> ExpContext:
        if self._ctx is None:
            self._ctx = ExpContext([fl.c for fl in self.flows])
        return self._ctx

    def forms_K(self):
        if self._forms_K is None:
            ctx = self.context()
            self._forms_K = (self.g.to_exprat(ctx),
                             tuple(fl.form.to_exprat(ctx) for fl in self.flows))
        return self._forms_K

    def transport(self, bf: BiForm) -> dict:
        return omega_transport(self.B, bf)

    def __eq__(self, other):
        return (isinstance(other, OmegaData) and self.B == other.B
                and self.Lambda == other.Lambda and self.g == other.g
                and self.flows == other.flows)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericityReport:
    """Outcome of the genericity checks; every field is decided exactly.

    Fields that do not apply to a variety are ``None``.
    """

    independent: bool
    eigenvalues_distinct: Optional[bool] = None
    pole_form_on_eigenvectors: Optional[bool] = None
    flow_discriminants: Optional[Tuple[bool, ...]] = None
    corner_nonzero: Optional[bool] = None
    intersection_determinants: Optional[Tuple[bool, ...]] = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks())

    def checks(self):
        """(name, ok) pairs for every applicable condition."""
        out = [("independent-forms", self.independent)]
        if self.eigenvalues_distinct is not None:
            out.append(("distinct-eigenvalues", self.eigenvalues_distinct))
        if self.pole_form_on_eigenvectors is not None:
            out.append(("pole-form-on-eigenvectors",
                        self.pole_form_on_eigenvectors))
        if self.flow_discriminants is not None:
            for k, ok in enumerate(self.flow_discriminants):
                out.append((f"flow-discriminant-{k + 1}", ok))
        if self.corner_nonzero is not None:
            out.append(("corner-value", self.corner_nonzero))
        if self.intersection_determinants is not None:
            for k, ok in enumerate(self.intersection_determinants):
                out.append((f"intersection-determinant-{k + 1}", ok))
        return out

    def first_failure(self):
        for name, ok in self.checks():
            if not ok:
                return name
        return None


# ---------------------------------------------------------------------------
# flow spaces
# ---------------------------------------------------------------------------

def _flow_space(pole: BiForm, transport) -> list:
    """Kernel basis of the jump condition transport(f') = c * pole(1,0,t).

    Unknowns are the (1,1) monomial coefficients of f' in canonical order
    followed by the jump constant c.
    """
    n = pole.n
    keys = [(j, tuple(alpha)) for j in (1, 0) for alpha in t_monomials(n, 1)]
    pole_top = pole.restrict_z((ONE, ZERO))
    rows = []
    for alpha in t_monomials(n, 1):
        row = []
        for j, beta in keys:
            mono = BiForm.monomial(n, 1, 1, j, beta, ONE)
            row.append(transport(mono).get(alpha, ZERO))
        row.append(-pole_top.get(alpha, ZERO))
        rows.append(row)
    kernel = linalg.nullspace(rows, len(keys) + 1, ONE)
    out = []
    for vec in kernel:
        coeffs = {key: v for key, v in zip(keys, vec[:-1]) if not v.is_zero}
        out.append(FlowForm(BiForm(n, 1, 1, coeffs), vec[-1]))
    return out


def solve_flow_space(f: BiForm, P, A) -> list:
    """All flow forms compatible with a Γ-type pole form f.

    The returned basis spans an (n+1)-dimensional space containing f
    itself (with jump constant 0).  Raises when f fails its own gluing
    identity.
    """
    P = P if isinstance(P, MatrixP) else MatrixP(P)
    A = A if isinstance(A, GaussQ) else GaussQ(A)
    _raise_if_nonzero(gamma_transport(P, A, f), "pole-gluing")
    return _flow_space(f, lambda bf: gamma_transport(P, A, bf))


def solve_flow_space_omega(g: BiForm, B) -> list:
    """All flow forms compatible with an Ω-type pole form g (3 solutions)."""
    B = B if isinstance(B, GaussQ) else GaussQ(B)
    _raise_if_nonzero(omega_transport(B, g), "pole-gluing")
    return _flow_space(g, lambda bf: omega_transport(B, bf))


# ---------------------------------------------------------------------------
# genericity checks
# ---------------------------------------------------------------------------

def _char_poly(P: MatrixP):
    """det(lambda*I - P) as a univariate polynomial over GaussQ."""
    n = P.n
    mat = [[qpoly.trim((-P.rows[i][j], ONE)) if i == j
            else qpoly.constant(-P.rows[i][j])
            for j in range(n)] for i in range(n)]
    return linalg.ring_det(mat, qpoly.add, qpoly.mul, qpoly.neg, ())


def eigenvalues_distinct(P: MatrixP) -> bool:
    """Exact test that the substitution matrix has simple spectrum."""
    return qpoly.squarefree(_char_poly(P))


def _adjugate_lambda(P: MatrixP):
    """Adjugate of (P - lambda*I); entry (i, j) is a polynomial in lambda."""
    n = P.n
    mat = [[qpoly.trim((P.rows[i][j], -ONE)) if i == j
            else qpoly.constant(P.rows[i][j])
            for j in range(n)] for i in range(n)]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # adj(M)[i][j] is the (j, i) cofactor.
            if n == 1:
                d = (ONE,)
            else:
                minor = [[mat[r][c] for c in range(n) if c != i]
                         for r in range(n) if r != j]
                d = linalg.ring_det(minor, qpoly.add, qpoly.mul, qpoly.neg, ())
                if (i + j) % 2:
                    d = qpoly.neg(d)
            adj[i][j] = d
    return adj


def check_eigenvector_nonvanishing(f: BiForm, P: MatrixP) -> bool:
    """Does f(1,0,.) avoid every eigenvector of P?

    Decided without computing eigenvectors: at a simple eigenvalue the
    nonzero columns of adj(P - lambda*I) span the eigendirection, so f
    vanishes on some eigenvector exactly when the characteristic
    polynomial shares a root with all of the column evaluations
    f(1,0, adj(P - lambda*I) e_m).  A gcd over GaussQ[lambda] decides
    that without leaving the ground field.
    """
    if not eigenvalues_distinct(P):
        raise PreconditionViolated(
            "eigenvector nonvanishing needs distinct eigenvalues")
    n = P.n
    top = f.restrict_z((ONE, ZERO))
    alpha = [top.get(tuple(1 if k == m else 0 for k in range(n)), ZERO)
             for m in range(n)]
    adj = _adjugate_lambda(P)
    g = _char_poly(P)
    for m in range(n):
        col_eval = ()
        for i in range(n):
            col_eval = qpoly.add(col_eval, qpoly.scale(adj[i][m], alpha[i]))
        g = qpoly.gcd(g, col_eval)
        if qpoly.degree(g) == 0:
            return True
    return qpoly.degree(g) == 0


def _coeff_linear_form(bf: BiForm, m: int):
    """Coefficient of t_m in a bidegree-(1,1) form, as (z1, z2) pair."""
    unit = tuple(1 if k == m else 0 for k in range(bf.n))
    return (bf.coeffs.get((1, unit), ZERO), bf.coeffs.get((0, unit), ZERO))


def _binform_squarefree(coeffs, d: int) -> bool:
    """Is the degree-d binary form with the given z2-ascending coefficients
    squarefree?  Dehomogenize along z2; the multiplicity of the root at
    (0:1) is the degree drop, which must stay below 2."""
    p = qpoly.trim(coeffs)
    if qpoly.is_zero(p):
        return False
    if d - qpoly.degree(p) > 1:
        return False
    return qpoly.squarefree(p)


def check_flow_discriminants(data: GammaData):
    """For each flow index j, drop the j-th flow form, view the remaining
    n forms as a linear system in t with coefficients linear in (z1, z2),
    and test that the degree-n determinant has no repeated projective
    root.  These determinants locate the points used to peel off leading
    operator coefficients; repeated roots would collapse them.
    """
    n = data.n
    out = []
    for skip in range(n):
        forms = [data.f] + [fl.form for k, fl in enumerate(data.flows)
                            if k != skip]
        mat = []
        for bf in forms:
            row = []
            for m in range(n):
                a, b = _coeff_linear_form(bf, m)
                row.append(qpoly.trim((a, b)))
            mat.append(row)
        det = linalg.ring_det(mat, qpoly.add, qpoly.mul, qpoly.neg, ())
        out.append(_binform_squarefree(det, n))
    return tuple(out)


def _forms_independent(forms) -> bool:
    keys = [(j, tuple(alpha)) for j in (1, 0)
            for alpha in t_monomials(forms[0].n, 1)]
    rows = [[bf.coeffs.get(key, ZERO) for key in keys] for bf in forms]
    return linalg.rank(rows) == len(forms)


# ---------------------------------------------------------------------------
# Ω intersection determinant
# ---------------------------------------------------------------------------

def omega_intersection_resultant(data: OmegaData, i: int):
    """Binary quadratic (z2-ascending coefficients) whose projective roots
    are the two intersection points of the pole curve with flow curve i.

    The points themselves generally live in a quadratic extension; every
    downstream computation consumes only these Gaussian-rational
    coefficients, never the roots.
    """
    g = data.g
    gi = data.flows[i].form
    al, be = g.coeffs.get((1, (1, 0)), ZERO), g.coeffs.get((1, (0, 1)), ZERO)
    ga, de = g.coeffs.get((0, (1, 0)), ZERO), g.coeffs.get((0, (0, 1)), ZERO)
    ali, bei = gi.coeffs.get((1, (1, 0)), ZERO), gi.coeffs.get((1, (0, 1)), ZERO)
    gai, dei = gi.coeffs.get((0, (1, 0)), ZERO), gi.coeffs.get((0, (0, 1)), ZERO)
    r2 = al * bei - be * ali
    r1 = (al * dei + ga * bei) - (be * gai + de * ali)
    r0 = ga * dei - de * gai
    return (r2, r1, r0)


def _omega_intersection_ok(data: OmegaData, basis_forms, i: int) -> bool:
    """Nonvanishing of the 2x2 determinant of the grade-1 basis numerators
    at the two intersection points of the pole curve with flow curve i.

    The intersection points generally live in a quadratic extension, so
    they are never materialized.  Writing both points as the projective
    roots of the degree-2 resultant R of the two curves (eliminating the
    second factor), the determinant is antisymmetric in the two roots and
    therefore factors as (root bracket) * W with W symmetric of bidegree
    (1,1).  W is expanded in the three symmetric brackets, whose values
    are (up to one common scale) the coefficients of R; both factors stay
    inside the exponential-rational field.
    """
    g = data.g
    gi = data.flows[i].form
    al, be = g.coeffs.get((1, (1, 0)), ZERO), g.coeffs.get((1, (0, 1)), ZERO)
    ga, de = g.coeffs.get((0, (1, 0)), ZERO), g.coeffs.get((0, (0, 1)), ZERO)
    ali, bei = gi.coeffs.get((1, (1, 0)), ZERO), gi.coeffs.get((1, (0, 1)), ZERO)
    gai, dei = gi.coeffs.get((0, (1, 0)), ZERO), gi.coeffs.get((0, (0, 1)), ZERO)
    if (al * de - be * ga).is_zero:
        # The pole curve degenerates into a product of lines.
        return False
    # R = L1 * L2i - L2 * L1i with L1 = al*z1+ga*z2 (w1-slot of g), etc.
    r2, r1, r0 = omega_intersection_resultant(data, i)
    disc = r1 * r1 - GaussQ(4) * r2 * r0
    if disc.is_zero:
        return False

    def quad(h: BiForm):
        """h at z = (x, y), w = (L2(x,y), -L1(x,y)) as an (x^2, xy, y^2)
        coefficient triple over the exponential field."""
        e = [None, None, None]
        for (j, (m1, _)), c in h.coeffs.items():
            zlin = (ONE, ZERO) if j == 1 else (ZERO, ONE)
            wlin = (be, de) if m1 == 1 else (-al, -ga)
            prods = (zlin[0] * wlin[0],
                     zlin[0] * wlin[1] + zlin[1] * wlin[0],
                     zlin[1] * wlin[1])
            for k, p in enumerate(prods):
                if p.is_zero:
                    continue
                term = c * p
                e[k] = term if e[k] is None else e[k] + term
        ctx = data.context()
        return [ExpRat.zero(ctx) if v is None else v for v in e]

    e1 = quad(basis_forms[0])
    e2 = quad(basis_forms[1])

    def ev(e, x, y):
        return e[0] * (x * x) + e[1] * (x * y) + e[2] * (y * y)

    def bracket(p, pp):
        v1 = ev(e1, *p) * ev(e2, *pp)
        v2 = ev(e2, *p) * ev(e1, *pp)
        return v1 - v2

    w1 = bracket((ONE, ZERO), (ZERO, ONE))
    w0 = -bracket((ONE, ONE), (ONE, ZERO)) - w1
    w2 = bracket((ONE, ONE), (ZERO, ONE)) - w1
    value = w0 * r0 - w1 * r1 + w2 * r2
    return not value.is_zero


# ---------------------------------------------------------------------------
# validators
# ---------------------------------------------------------------------------

def validate_gamma(data: GammaData) -> GenericityReport:
    """Check every defining identity and genericity hypothesis of a Γ-type
    datum.  Identity failures raise; genericity results are reported."""
    if data._report is not None:
        return data._report
    _raise_if_nonzero(data.transport(data.f), "pole-gluing")
    pole_top = data.f.restrict_z((ONE, ZERO))
    for k, fl in enumerate(data.flows):
        defect = _tp_sub(data.transport(fl.form), _tp_scale(pole_top, fl.c))
        _raise_if_nonzero(defect, f"flow-gluing-{k + 1}")
    distinct = eigenvalues_distinct(data.P)
    on_eig = (check_eigenvector_nonvanishing(data.f, data.P)
              if distinct else False)
    report = GenericityReport(
        independent=_forms_independent(
            [data.f] + [fl.form for fl in data.flows]),
        eigenvalues_distinct=distinct,
        pole_form_on_eigenvectors=on_eig,
        flow_discriminants=check_flow_discriminants(data),
    )
    data._report = report
    return report


def validate_omega(data: OmegaData) -> GenericityReport:
    """Check every defining identity and genericity hypothesis of an Ω-type
    datum, including the determinant condition at the intersection points
    of the pole curve with each flow curve."""
    if data._report is not None:
        return data._report
    _raise_if_nonzero(data.transport(data.g), "pole-gluing")
    pole_top = data.g.restrict_z((ONE, ZERO))
    for k, fl in enumerate(data.flows):
        defect = _tp_sub(data.transport(fl.form), _tp_scale(pole_top, fl.c))
        _raise_if_nonzero(defect, f"flow-gluing-{k + 1}")
    corner = data.g.coeffs.get((0, (0, 1)), ZERO)  # z2*w2 coefficient
    independent = _forms_independent(
        [data.g] + [fl.form for fl in data.flows])
    if independent and not corner.is_zero:
        from .bamodule import grade_basis  # deferred: avoids an import cycle
        basis_forms = [el.h for el in grade_basis(data, 1, validated=False)]
        inter = tuple(_omega_intersection_ok(data, basis_forms, i)
                      for i in range(2))
    else:
        inter = (False, False)
    report = GenericityReport(
        independent=independent,
        corner_nonzero=not corner.is_zero,
        intersection_determinants=inter,
    )
    data._report = report
    return report


def validate(data) -> GenericityReport:
    return validate_gamma(data) if data.kind == "gamma" else validate_omega(data)


def require_generic(data):
    """Raise unless every identity and genericity condition holds."""
    report = validate(data)
    failure = report.first_failure()
    if failure is not None:
        raise GenericityFailure(failure)
    return report
