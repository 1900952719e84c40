"""Acceptance suite: one test per acceptance criterion, each printing a
PASS line with its runtime and enforcing its time budget and exact
(zero-tolerance) comparisons."""

import itertools
import random
import time
from contextlib import contextmanager

from bamod.bamodule import ModuleElement, expected_rank, grade_basis
from bamod.diffop import (DiffOp, apply_row, build_operator, commutator,
                          eigen_relation_holds, expand)
from bamod.embedding import injectivity_probe
from bamod.exprat import ExpContext, ExpRat
from bamod.gaussq import GaussQ
from bamod.mero import mero_basis
from bamod.presets import get_preset, reference_operators
from bamod.spectral import solve_flow_space, solve_flow_space_omega

from conftest import rand_exprat


@contextmanager
def budget(name: str, seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"PASS {name} ({elapsed:.2f}s / {seconds:.0f}s budget)")
    assert elapsed < seconds, f"{name} exceeded its {seconds}s budget"


def test_criterion_1_gamma_reproduction():
    with budget("criterion-1 gamma-n2 operator reproduction", 1.0):
        preset = get_preset("gamma-n2")
        refs = reference_operators("gamma-n2")
        ctx = preset.data.context()
        one = ExpRat.one(ctx)
        built = {name: build_operator(lam, preset.basis)
                 for name, lam in zip(preset.lambda_names, preset.lambdas)}
        diag = DiffOp(ctx, 2, {(0, 0): {(1, 0): one, (0, 1): -one},
                               (1, 1): {(1, 0): one, (0, 1): -one}})
        assert built["lambda1"] == diag
        for name in preset.lambda_names:
            assert built[name] == refs[name]


def test_criterion_2_omega_reproduction():
    with budget("criterion-2 omega operator reproduction", 1.0):
        preset = get_preset("omega")
        refs = reference_operators("omega")
        ctx = preset.data.context()
        quarter = ExpRat.const(ctx, GaussQ(1) / GaussQ(4))
        built = {name: build_operator(lam, preset.basis)
                 for name, lam in zip(preset.lambda_names, preset.lambdas)}
        scaled_identity = DiffOp(ctx, 2, {
            (0, 0): {(1, 0): quarter, (0, 1): quarter},
            (1, 1): {(1, 0): quarter, (0, 1): quarter}})
        assert built["lambda1"] == scaled_identity
        for name in preset.lambda_names:
            assert built[name] == refs[name]


def test_criterion_3_pairwise_commutators():
    with budget("criterion-3 pairwise commutators vanish", 5.0):
        for name in ("gamma-n2", "omega"):
            preset = get_preset(name)
            ops = [build_operator(lam, preset.basis) for lam in preset.lambdas]
            for a, b in itertools.combinations(ops, 2):
                assert commutator(a, b).is_zero


def test_criterion_4_eigen_relation():
    with budget("criterion-4 eigen-relation", 5.0):
        for name in ("gamma-n2", "omega"):
            preset = get_preset(name)
            for lam in preset.lambdas:
                op = build_operator(lam, preset.basis)
                assert eigen_relation_holds(op, preset.basis, lam)
                # element-level restatement of the same identity
                for i in range(preset.basis.size):
                    lhs = apply_row(op.row(i), preset.basis, 1 + lam.d)
                    assert lhs == preset.basis.elements[i].mul_mero(lam)


def test_criterion_5_rank_formula():
    with budget("criterion-5 grade rank formula", 30.0):
        cases = [("gamma-n2", 2), ("omega", 2), ("gamma-n3", 3)]
        for name, n in cases:
            data = get_preset(name).data
            for k in (1, 2, 3, 4):
                assert len(grade_basis(data, k)) == expected_rank(n, k)
        assert expected_rank(3, 4) == 60


def test_criterion_6_flow_space_dimensions():
    with budget("criterion-6 flow space dimensions", 1.0):
        for name in ("gamma-n2", "gamma-n3"):
            d = get_preset(name).data
            assert len(solve_flow_space(d.f, d.P, d.A)) == d.n + 1
        od = get_preset("omega").data
        assert len(solve_flow_space_omega(od.g, od.B)) == 3


def test_criterion_7_ring_homomorphism():
    with budget("criterion-7 ring homomorphism", 30.0):
        for name in ("gamma-n2", "omega"):
            preset = get_preset(name)
            data, basis = preset.data, preset.basis
            slice1 = mero_basis(data, 1)
            slice2 = mero_basis(data, 2)
            d1_ops = [build_operator(m, basis) for m in slice1]
            d2_ops = [build_operator(m, basis) for m in slice2]
            # products: D(lam * mu) = D(lam) o D(mu)
            for (i, lam), (j, mu) in itertools.product(
                    enumerate(slice1), enumerate(slice1)):
                assert build_operator(lam * mu, basis) == \
                    d1_ops[i].compose(d1_ops[j])
            for (i, lam), (j, mu) in zip(
                    itertools.cycle(enumerate(slice1)), enumerate(slice2)):
                assert build_operator(lam * mu, basis) == \
                    d1_ops[i].compose(d2_ops[j])
            # equal-pole-order sums: D(lam + mu) = D(lam) + D(mu)
            for (i, lam), (j, mu) in itertools.combinations(
                    enumerate(slice1), 2):
                assert build_operator(lam + mu, basis) == d1_ops[i] + d1_ops[j]
            for (i, lam), (j, mu) in itertools.combinations(
                    enumerate(slice2), 2):
                assert build_operator(lam + mu, basis) == d2_ops[i] + d2_ops[j]


def test_criterion_8_embedding_probes():
    with budget("criterion-8 embedding probes", 10.0):
        gamma = get_preset("gamma-n2").data
        rg = injectivity_probe("gamma", gamma, samples=100, seed=20260808)
        ro = injectivity_probe("omega", samples=100, seed=20260808)
        for report in (rg, ro):
            assert report.samples == 100
            assert report.passed
            assert not report.equation_failures
            assert not report.jacobian_failures
            assert not report.injectivity_violations
            assert not report.identified_pair_failures


def test_criterion_9_property_suites():
    with budget("criterion-9 exact property suites", 60.0):
        # 1000 random pairs: Leibniz and commuting derivations
        ctx = ExpContext([GaussQ(0, -1), GaussQ(0, -1)])
        rng = random.Random(909)
        for _ in range(1000):
            a = rand_exprat(rng, ctx)
            b = rand_exprat(rng, ctx)
            j = rng.randrange(2)
            assert (a * b).derive(j) == a.derive(j) * b + a * b.derive(j)
            assert a.derive(0).derive(1) == a.derive(1).derive(0)

        # 100 random module elements stay glued under all three maps
        checked = 0
        for name in ("gamma-n2", "omega"):
            preset = get_preset(name)
            data = preset.data
            dctx = data.context()
            lam = preset.lambdas[0]
            for k in (1, 2):
                pool = grade_basis(data, k)
                for _ in range(25):
                    acc = pool[0].h.scale(rand_exprat(rng, dctx))
                    for el in pool[1:]:
                        acc = acc + el.h.scale(rand_exprat(rng, dctx))
                    el = ModuleElement(data, k, acc)
                    assert el.derive(rng.randrange(2)).is_glued()
                    assert el.lift(1).is_glued()
                    assert el.mul_mero(lam).is_glued()
                    checked += 1
        assert checked >= 100

        # expand(apply(row)) returns the row, order <= 2
        for name in ("gamma-n2", "omega"):
            preset = get_preset(name)
            basis = preset.basis
            dctx = preset.data.context()
            alphas = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
            for _ in range(6):
                row = []
                for _i in range(basis.size):
                    cell = {a: rand_exprat(rng, dctx)
                            for a in alphas if rng.random() < 0.5}
                    row.append(cell)
                target = apply_row(row, basis, 3)
                assert list(expand(target, basis)) == [
                    {a: c for a, c in cell.items() if not c.is_zero}
                    for cell in row]
