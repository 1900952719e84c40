"""Full pipeline on a datum that ships with no reference data: irrational
eigenvalues, echelon basis, operators from computed eigenfunction slices."""

import itertools

from bamod.bamodule import ModuleBasis, grade_basis
from bamod.biform import MatrixP, parse_form
from bamod.diffop import DiffOp, build_operator, commutator, eigen_relation_holds
from bamod.exprat import ExpRat
from bamod.gaussq import GaussQ
from bamod.mero import mero_basis
from bamod.spectral import GammaData, validate_gamma


def fresh_data() -> GammaData:
    # eigenvalues 1 +/- sqrt(2): the genericity checks must decide
    # everything without ever leaving the Gaussian rationals
    P = MatrixP([[1, 2], [1, 1]])
    f = parse_form("z1*t1 + z2*t1 + 2*z1*t2", n=2)
    f1 = parse_form("2*z1*t1 + 3*z1*t2 + z2*t2", n=2)
    f2 = parse_form("z2*t1", n=2)
    return GammaData(2, P, 1, 1, f, [(f1, 1), (f2, GaussQ(-1))])


def test_fresh_datum_validates():
    report = validate_gamma(fresh_data())
    assert report.passed


def test_fresh_datum_operator_ring():
    data = fresh_data()
    basis = ModuleBasis(data, grade_basis(data, 1))
    assert basis.verify_freeness(3)

    slice1 = mero_basis(data, 1)
    slice2 = mero_basis(data, 2)
    assert len(slice1) == 2 and len(slice2) == 6

    ops1 = [build_operator(m, basis) for m in slice1]
    for m, op in zip(slice1, ops1):
        assert op.order <= 1
        assert eigen_relation_holds(op, basis, m)

    some2 = slice2[3]
    op2 = build_operator(some2, basis)
    assert eigen_relation_holds(op2, basis, some2)

    for a, b in itertools.combinations(ops1 + [op2], 2):
        assert commutator(a, b).is_zero

    # homomorphism spot checks on the fresh datum
    assert build_operator(slice1[0] * slice1[1], basis) == \
        ops1[0].compose(ops1[1])
    assert build_operator(slice1[0] + slice1[1], basis) == ops1[0] + ops1[1]


def test_fresh_two_factor_datum():
    # B = 2 with a denser pole form; no reference data exists for this one
    from bamod.spectral import OmegaData, validate_omega
    g = parse_form("4*z1*w1 + 2*z1*w2 + z2*w1 + z2*w2", n=2)
    g1 = parse_form("8*z1*w1 + 2*z1*w2", n=2)
    g2 = parse_form("12*z1*w1 + 4*z1*w2 + 2*z2*w1 + z2*w2", n=2)
    data = OmegaData(2, 1, g, [(g1, 1), (g2, 1)])
    assert validate_omega(data).passed
    basis = ModuleBasis(data, grade_basis(data, 1))
    assert basis.verify_freeness(3)
    slice1 = mero_basis(data, 1)
    ops = [build_operator(m, basis) for m in slice1]
    for m, op in zip(slice1, ops):
        assert eigen_relation_holds(op, basis, m)
    assert commutator(ops[0], ops[1]).is_zero


def test_degenerate_two_factor_datum_is_rejected():
    # A flow whose numerator vanishes at both intersection points makes
    # the basis determinant identically zero: the direct check must
    # refuse the datum instead of constructing a non-free module.
    from bamod.spectral import OmegaData, validate_omega
    g = parse_form("4*z1*w1 + 2*z1*w2 + z2*w1 + z2*w2", n=2)
    g1 = parse_form("8*z1*w1 + 2*z1*w2", n=2)
    g2 = parse_form("z2*w1", n=2)
    data = OmegaData(2, 1, g, [(g1, 1), (g2, 0)])
    report = validate_omega(data)
    assert report.intersection_determinants == (True, False)
    assert not report.passed


def test_three_variable_operator_pipeline(gamma3):
    # 3x3 matrix operators in three derivative directions, echelon basis
    data = gamma3.data
    basis = ModuleBasis(data, grade_basis(data, 1))
    assert basis.verify_freeness(2)
    slice1 = mero_basis(data, 1)
    assert len(slice1) == 3
    ops = [build_operator(m, basis) for m in slice1]
    for m, op in zip(slice1, ops):
        assert op.size == 3
        assert op.order <= 1
        assert eigen_relation_holds(op, basis, m)
    for a, b in itertools.combinations(ops, 2):
        assert commutator(a, b).is_zero
    assert build_operator(slice1[1] * slice1[2], basis) == \
        ops[1].compose(ops[2])
    # three-index derivative serialization round-trips
    assert DiffOp.from_json(ops[0].to_json()) == ops[0]


def test_operator_scaling_matches_scalar_composition():
    data = fresh_data()
    basis = ModuleBasis(data, grade_basis(data, 1))
    lam = mero_basis(data, 1)[0]
    D = build_operator(lam, basis)
    ctx = data.context()
    c = ExpRat.q_power(ctx, -1) + ExpRat.const(ctx, GaussQ(2, 1))
    scalar = DiffOp(ctx, 2, {(i, i): {(0, 0): c} for i in range(2)})
    assert D.scale(c) == scalar.compose(D)
