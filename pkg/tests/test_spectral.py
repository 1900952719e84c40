import pytest

from bamod.biform import MatrixP, parse_form
from bamod.errors import GenericityFailure, IdentityViolation, PreconditionViolated
from bamod.gaussq import GaussQ, ONE, ZERO
from bamod.spectral import (FlowForm, GammaData, OmegaData,
                            check_eigenvector_nonvanishing,
                            check_flow_discriminants, eigenvalues_distinct,
                            require_generic, solve_flow_space,
                            solve_flow_space_omega, validate_gamma,
                            validate_omega)

SWAP = MatrixP([[0, 1], [1, 0]])
F_G2 = parse_form("-z1*t1 - z2*t2", n=2)


def quad_disc(a, b, c):
    """Discriminant of a*u^2 + b*u + c, the hand oracle for binary quadratics."""
    return b * b - GaussQ(4) * a * c


def test_gamma_preset_validates(gamma2):
    report = validate_gamma(gamma2.data)
    assert report.passed
    assert report.flow_discriminants == (True, True)


def test_identity_map_fails_distinct_eigenvalues():
    ident = MatrixP([[1, 0], [0, 1]])
    data = GammaData(2, ident, 1, 1, parse_form("z1*t1 + z2*t1", n=2),
                     [(parse_form("z1*t2 + z2*t2", n=2), 0),
                      (parse_form("z1*t1", n=2), 1)])
    report = validate_gamma(data)
    assert report.eigenvalues_distinct is False
    assert not report.passed
    with pytest.raises(GenericityFailure):
        require_generic(data)


def test_wrong_glue_scale_raises_identity_violation(gamma2):
    d = gamma2.data
    bad = GammaData(2, d.P, 2, d.Lambda, d.f, d.flows)
    with pytest.raises(IdentityViolation) as err:
        validate_gamma(bad)
    assert err.value.identity == "pole-gluing"


def test_bad_flow_constant_raises(gamma2):
    d = gamma2.data
    flows = [FlowForm(d.flows[0].form, GaussQ(3)), d.flows[1]]
    with pytest.raises(IdentityViolation) as err:
        validate_gamma(GammaData(2, d.P, d.A, d.Lambda, d.f, flows))
    assert err.value.identity == "flow-gluing-1"


def test_flow_space_dimension_and_membership(gamma2, gamma3):
    for preset in (gamma2, gamma3):
        d = preset.data
        flows = solve_flow_space(d.f, d.P, d.A)
        assert len(flows) == d.n + 1
        # f itself (jump constant 0) lies in the span: match coefficients.
        from bamod import linalg
        from bamod.biform import bidegree_monomials
        keys = bidegree_monomials(d.n, 1, 1)
        vecs = [[fl.form.coeffs.get(k, ZERO) for k in keys] + [fl.c]
                for fl in flows]
        target = [d.f.coeffs.get(k, ZERO) for k in keys] + [ZERO]
        assert linalg.span_contains(vecs, target, ONE)


def test_flow_space_rejects_bad_pole_form():
    with pytest.raises(IdentityViolation):
        solve_flow_space(parse_form("z1*t1 + 2*z2*t1", n=2), SWAP, 1)


def test_omega_flow_space_dimension(omega):
    d = omega.data
    assert len(solve_flow_space_omega(d.g, d.B)) == 3


def test_eigenvector_nonvanishing_gcd_vs_direct():
    # P diagonal: eigenvectors are the coordinate axes, so the criterion
    # can be checked against direct evaluation of f(1,0,e_j).
    P = MatrixP([[2, 0], [0, 3]])
    f_ok = parse_form("z1*t1 + z1*t2 + z2*t1 + z2*t2", n=2)
    f_bad = parse_form("z1*t2 + z2*t1 + z2*t2", n=2)  # f(1,0,e_1) = 0
    for f, want in ((f_ok, True), (f_bad, False)):
        top = f.restrict_z((1, 0))
        direct = all(not top.get((1, 0) if m == 0 else (0, 1), ZERO).is_zero
                     for m in range(2))
        assert direct is want
        assert check_eigenvector_nonvanishing(f, P) is want


def test_eigenvector_check_on_swap(gamma2):
    # eigenvectors of the swap are (1,1) and (1,-1); f(1,0,.) = -t1 kills neither
    assert check_eigenvector_nonvanishing(F_G2, SWAP) is True


def test_eigenvector_check_random_oracle():
    # Conjugated diagonal matrices have known rational eigenvectors (the
    # columns of the conjugating matrix), so the gcd criterion can be
    # compared against direct evaluation on random inputs.
    import random
    from bamod.biform import BiForm
    from conftest import rand_gq

    rng = random.Random(77)
    cases = 0
    while cases < 20:
        n = rng.choice((2, 3))
        eigs = rng.sample(range(-6, 7), n)
        if 0 in eigs:
            continue
        S = [[rand_gq(rng) for _ in range(n)] for _ in range(n)]
        from bamod import linalg
        if linalg.gq_det(S).is_zero:
            continue
        Sinv = linalg.gq_inverse(S)
        P = MatrixP([[sum((S[i][k] * GaussQ(eigs[k]) * Sinv[k][j]
                           for k in range(n)), ZERO)
                      for j in range(n)] for i in range(n)])
        alpha = [rand_gq(rng) for _ in range(n)]
        coeffs = {}
        for m in range(n):
            unit = tuple(1 if k == m else 0 for k in range(n))
            coeffs[(1, unit)] = alpha[m]
            coeffs[(0, unit)] = rand_gq(rng)
        f = BiForm(n, 1, 1, coeffs)
        if all(c.is_zero for c in alpha):
            continue
        # direct: f(1,0, S e_j) for each eigenvector column j
        direct = all(
            not sum((alpha[i] * S[i][j] for i in range(n)), ZERO).is_zero
            for j in range(n))
        assert check_eigenvector_nonvanishing(f, P) is direct
        cases += 1


def test_eigenvector_check_precondition():
    with pytest.raises(PreconditionViolated):
        check_eigenvector_nonvanishing(F_G2, MatrixP([[1, 0], [0, 1]]))


def test_full_report_when_pole_form_kills_eigenvector():
    # P diagonal and the t1-column of the pole form forced to zero: a
    # perfectly consistent datum whose pole form vanishes on the first
    # eigenvector, which only the genericity report may reject.
    P = MatrixP([[2, 0], [0, 3]])
    f = parse_form("3*z1*t2 + z2*t2", n=2)
    f1 = parse_form("2*z1*t1 + z2*t1", n=2)
    f2 = parse_form("3*z1*t2", n=2)
    data = GammaData(2, P, 1, 1, f, [(f1, 0), (f2, 1)])
    report = validate_gamma(data)
    assert report.eigenvalues_distinct is True
    assert report.pole_form_on_eigenvectors is False
    assert not report.passed


def test_flow_discriminant_values_match_hand_oracle(gamma2):
    # For the two-variable preset the two determinants are binary
    # quadratics computed by hand: z1^2 + i z1 z2 - z2^2 (drop flow 1)
    # and -z1^2 + i z1 z2 + z2^2 (drop flow 2); both have discriminant 3.
    i = GaussQ(0, 1)
    assert quad_disc(ONE, i, GaussQ(-1)) == GaussQ(3)
    assert quad_disc(GaussQ(-1), i, ONE) == GaussQ(3)
    assert check_flow_discriminants(gamma2.data) == (True, True)


def test_flow_discriminant_perfect_square_detected():
    # flows chosen so that dropping the second one leaves the determinant
    # -(z1 + i*z2)^2, a perfect square the discriminant test must reject
    f1 = parse_form("-2i*z1*t1 + z1*t2 + z2*t1", n=2)
    f2 = parse_form("z1*t1 + z1*t2 + z2*t1 + z2*t2", n=2)
    data = GammaData(2, SWAP, 1, 1, F_G2, [(f1, GaussQ(0, 2)), (f2, 0)])
    report = validate_gamma(data)
    assert report.flow_discriminants == (True, False)
    assert not report.passed


def test_degenerate_flow_collapses_determinant():
    # Using the pole form itself as a flow (jump constant 0) duplicates a
    # matrix row, so the determinant with the other flow dropped vanishes.
    d = GammaData(2, SWAP, 1, 1, F_G2,
                  [(F_G2, 0),
                   (parse_form("-2*z1*t1 + z1*t2 + z2*t1", n=2), 2)])
    report = validate_gamma(d)
    assert not report.independent
    assert report.flow_discriminants == (True, False)


def test_omega_preset_validates(omega):
    report = validate_omega(omega.data)
    assert report.passed
    assert report.corner_nonzero is True
    assert report.intersection_determinants == (True, True)


def test_omega_intersection_points_via_resultant(omega):
    # The pole curve meets flow curve 1 where z1/z2 is a root of
    # z^2 + 4z + 2 (roots -2 +/- sqrt(2)) and flow curve 2 where it is a
    # root of z^2 - 2 (roots +/- sqrt(2)); the resultants carry exactly
    # these minimal polynomials, no root coordinates are ever formed.
    from bamod.spectral import omega_intersection_resultant
    r2, r1, r0 = omega_intersection_resultant(omega.data, 0)
    assert (r2, r1, r0) == (GaussQ(-1), GaussQ(-4), GaussQ(-2))
    r2, r1, r0 = omega_intersection_resultant(omega.data, 1)
    assert (r2, r1, r0) == (GaussQ(1), GaussQ(0), GaussQ(-2))


def test_omega_corner_failure():
    # The only pole forms with vanishing corner value satisfying the
    # gluing identity are multiples of z2*w1; any compatible flow pair
    # then shares its 2-dimensional solution space, so independence
    # degenerates too.  The corner check must report the failure.
    g = parse_form("z2*w1", n=2)
    data = OmegaData(1, 1, g,
                     [(parse_form("z1*w1 + z1*w2 + z2*w2", n=2), 1),
                      (parse_form("z2*w1", n=2), 0)])
    report = validate_omega(data)
    assert report.corner_nonzero is False
    assert not report.passed


def test_omega_wrong_scale_raises(omega):
    d = omega.data
    with pytest.raises(IdentityViolation):
        validate_omega(OmegaData(2, d.Lambda, d.g, d.flows))


def test_eigenvalues_distinct_matrix_tests():
    assert eigenvalues_distinct(SWAP)
    assert not eigenvalues_distinct(MatrixP([[1, 1], [0, 1]]))
