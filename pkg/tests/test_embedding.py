import pytest

from bamod.biform import MatrixP
from bamod.embedding import (ProjPoint, check_phi1_equations,
                             gamma_identified, injectivity_probe,
                             omega_identified, phi1, phi2, phi2_vanishing_ok)
from bamod.gaussq import GaussQ

SWAP = MatrixP([[0, 1], [1, 0]])
P10 = ProjPoint((1, 0))
P01 = ProjPoint((0, 1))


def test_projpoint_rejects_zero():
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))


def test_proj_eq_scaling():
    assert ProjPoint((1, 2, 3)).proj_eq(ProjPoint((2, 4, 6)))
    assert not ProjPoint((1, 2, 3)).proj_eq(ProjPoint((1, 2, 4)))


def test_phi1_at_degenerate_first_factor():
    t = ProjPoint((3, 5))
    u, v = phi1(P10, t, SWAP)
    assert u.proj_eq(ProjPoint((0, 0, 1)))
    assert v.proj_eq(ProjPoint((3, 5, 0, 0)))


def test_phi1_respects_identification():
    t = ProjPoint((3, 5))
    u1, v1 = phi1(P10, t, SWAP)
    u2, v2 = phi1(P01, ProjPoint(SWAP.apply_vec(t.coords)), SWAP)
    assert u1.proj_eq(u2) and v1.proj_eq(v2)


def test_phi1_by_direct_substitution():
    # z = (1:1), t = (1:0), P the swap: u = (1:1:2), v = (1:1:1:0)
    u, v = phi1(ProjPoint((1, 1)), ProjPoint((1, 0)), SWAP)
    assert u.proj_eq(ProjPoint((1, 1, 2)))
    assert v.proj_eq(ProjPoint((1, 1, 1, 0)))


def test_phi1_images_satisfy_equations():
    pts = [((1, 1), (1, 0)), ((2, 3), (5, 7)), ((1, 0), (4, 9)),
           ((0, 1), (1, 1)), ((1, -1), (2, -5))]
    for zc, tc in pts:
        u, v = phi1(ProjPoint(zc), ProjPoint(tc), SWAP)
        assert check_phi1_equations(u, v, SWAP)


def test_phi1_cubic_relation_fails_off_image():
    u = ProjPoint((1, 1, 1))
    v = ProjPoint((1, 0, 0, 0))
    assert not check_phi1_equations(u, v, SWAP)


def test_phi1_mixed_relation_fails_with_stray_eta():
    # points with both pure-u coordinates zero must have eta = 0
    u = ProjPoint((0, 0, 1))
    v = ProjPoint((1, 0, 1, 0))  # eta = (1, 0) != 0
    assert not check_phi1_equations(u, v, SWAP)


def test_phi2_degenerate_point():
    img = phi2(P01, P10)
    coords = img.coords
    assert not coords[9].is_zero
    assert all(coords[k].is_zero for k in range(12) if k != 9)


def test_phi2_respects_identification():
    for tc in ((3, 5), (1, 0), (0, 1), (1, 1)):
        t = ProjPoint(tc)
        assert phi2(P10, t).proj_eq(phi2(t, P01))


def test_phi2_all_monomials_at_ones():
    img = phi2(ProjPoint((1, 1)), ProjPoint((1, 1)))
    want = [3, 2, 2] + [1] * 9
    assert img.proj_eq(ProjPoint([GaussQ(v) for v in want]))


def test_phi2_vanishing_pattern():
    for zc, wc in (((2, 3), (5, 7)), ((1, 0), (1, 2)), ((4, 1), (0, 1))):
        assert phi2_vanishing_ok(phi2(ProjPoint(zc), ProjPoint(wc)))
    bad = ProjPoint((1, 1, 0) + (0,) * 9)  # u2 != 0 but u3 = 0
    assert not phi2_vanishing_ok(bad)


def test_gamma_identified():
    t = ProjPoint((2, 7))
    assert gamma_identified((P10, t), (P01, ProjPoint(SWAP.apply_vec(t.coords))), SWAP)
    assert gamma_identified((P01, t), (P10, ProjPoint(SWAP.apply_vec(t.coords))), SWAP)
    assert not gamma_identified((P10, t), (P01, t), MatrixP([[1, 1], [0, 1]]))
    assert gamma_identified((ProjPoint((2, 2)), t), (ProjPoint((1, 1)), t), SWAP)


def test_omega_identified_triple_class():
    # (1:0,1:0), (1:0,0:1) and (0:1,0:1) all collapse to one point
    a = (P10, P10)
    b = (P10, P01)
    c = (P01, P01)
    assert omega_identified(a, b)
    assert omega_identified(b, c)
    assert omega_identified(a, c)
    assert not omega_identified(a, (P01, P10))


def test_probe_gamma_clean(gamma2):
    report = injectivity_probe("gamma", gamma2.data, samples=30, seed=42)
    assert report.passed
    assert report.identified_pairs_checked == 10
    assert report.samples == 30


def test_probe_omega_clean():
    report = injectivity_probe("omega", samples=30, seed=7)
    assert report.passed


def test_probe_three_variable_gluing(gamma3):
    # CP^1 x CP^2 into CP^2 x CP^5: all relations, Jacobian ranks and
    # identifications must hold away from n = 2 as well
    report = injectivity_probe("gamma", gamma3.data, samples=30, seed=11)
    assert report.passed


def test_probe_duplicates_skipped_without_false_positives():
    # a deliberately tiny coordinate pool produces projectively equal
    # samples; they must be skipped, not reported as violations
    report = injectivity_probe("omega", samples=60, seed=1, span=1)
    assert report.samples == 60
    assert report.duplicates_skipped > 0
    assert not report.injectivity_violations


def test_probe_requires_samples():
    with pytest.raises(ValueError):
        injectivity_probe("omega", samples=0, seed=1)


def test_probe_report_json_shape():
    report = injectivity_probe("omega", samples=5, seed=2)
    payload = report.to_json()
    assert payload["passed"] is True
    assert payload["samples"] == 5
