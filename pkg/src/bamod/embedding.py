"""Algebraic-variety structure on the glued quotients.

Two polynomial morphisms realize the quotients as honest algebraic
varieties: the one-factor gluing embeds into CP^2 x CP^(2n-1), the
two-factor gluing into CP^11.  This module evaluates the maps exactly,
checks the polynomial relations cutting out the first image, checks the
coordinate vanishing pattern that pins down fibers of the second, and
runs seeded randomized probes for injectivity (images of non-identified
points differ, identified points coincide) and for nondegeneracy of the
differential (exact Jacobian rank in affine charts via forward-mode
derivatives).

Projective points are compared scale-free: normalize by the first
nonzero coordinate, or equivalently require all 2x2 minors of the two
coordinate vectors to vanish.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .biform import MatrixP
from .gaussq import GaussQ, ONE, ZERO


class ProjPoint:
    """Point of projective space with Gaussian-rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(c if isinstance(c, GaussQ) else GaussQ(c)
                       for c in coords)
        if all(c.is_zero for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = coords

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def normalized(self):
        """Canonical representative: first nonzero coordinate scaled to 1."""
        pivot = next(c for c in self.coords if not c.is_zero)
        return tuple(c / pivot for c in self.coords)

    def proj_eq(self, other: "ProjPoint") -> bool:
        if len(self.coords) != len(other.coords):
            return False
        a, b = self.coords, other.coords
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                if not (a[i] * b[j] - a[j] * b[i]).is_zero:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.proj_eq(other)

    def __hash__(self):
        return hash(self.normalized())

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


# ---------------------------------------------------------------------------
# forward-mode derivatives for exact Jacobians
# ---------------------------------------------------------------------------

class Jet:
    """Value together with its exact gradient (first-order forward mode)."""

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = tuple(grad)

    @classmethod
    def const(cls, val, nvars):
        return cls(val, (ZERO,) * nvars)

    @staticmethod
    def _lift(x, nvars):
        if isinstance(x, Jet):
            return x
        if isinstance(x, (GaussQ, int)):
            return Jet.const(x if isinstance(x, GaussQ) else GaussQ(x), nvars)
        return None

    def __add__(self, other):
        o = self._lift(other, len(self.grad))
        if o is None:
            return NotImplemented
        return Jet(self.val + o.val,
                   tuple(a + b for a, b in zip(self.grad, o.grad)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other, len(self.grad))
        if o is None:
            return NotImplemented
        return Jet(self.val - o.val,
                   tuple(a - b for a, b in zip(self.grad, o.grad)))

    def __mul__(self, other):
        o = self._lift(other, len(self.grad))
        if o is None:
            return NotImplemented
        return Jet(self.val * o.val,
                   tuple(self.val * gb + o.val * ga
                         for ga, gb in zip(self.grad, o.grad)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other, len(self.grad))
        if o is None:
            return NotImplemented
        v = self.val / o.val
        return Jet(v, tuple((ga - v * gb) / o.val
                            for ga, gb in zip(self.grad, o.grad)))


# ---------------------------------------------------------------------------
# the two morphisms (generic over GaussQ or Jet scalars)
# ---------------------------------------------------------------------------

def _phi1_raw(z1, z2, t, p_inv_rows):
    u = (z1 * z1 * z2, z1 * z2 * z2, z1 * z1 * z1 + z2 * z2 * z2)
    n = len(t)
    zero = ZERO * t[0]
    tinv = []
    for m in range(n):
        acc = zero
        for l in range(n):
            acc = acc + p_inv_rows[m][l] * t[l]
        tinv.append(acc)
    z1sq = z1 * z1
    z2sq = z2 * z2
    xi = [z1sq * t[m] + z2sq * tinv[m] for m in range(n)]
    eta = [z1 * z2 * t[m] for m in range(n)]
    return u, xi, eta


def phi1(z: ProjPoint, t: ProjPoint, P: MatrixP):
    """Map a point of CP^1 x CP^(n-1) to CP^2 x CP^(2n-1)."""
    u, xi, eta = _phi1_raw(z.coords[0], z.coords[1], t.coords,
                           P.inverse().rows)
    return ProjPoint(u), ProjPoint(list(xi) + list(eta))


def check_phi1_equations(u: ProjPoint, v: ProjPoint, P: MatrixP) -> bool:
    """The three polynomial relations cutting out the image of the
    one-factor embedding: a cubic in u alone and two vectors of mixed
    relations tying the two halves of v to u through P."""
    u1, u2, u3 = u.coords
    n = len(v.coords) // 2
    xi = v.coords[:n]
    eta = v.coords[n:]
    if not (u1 ** 3 + u2 ** 3 - u1 * u2 * u3).is_zero:
        return False
    p_eta = P.apply_vec(eta)
    pinv = P.inverse()
    pinv_eta = pinv.apply_vec(eta)
    p_xi = P.apply_vec(xi)
    for m in range(n):
        if not (u1 * u1 * eta[m] + u2 * u2 * pinv_eta[m]
                - u1 * u2 * xi[m]).is_zero:
            return False
    for m in range(n):
        if not (u3 * eta[m] + u1 * p_eta[m] + u2 * pinv_eta[m]
                - u1 * xi[m] - u2 * p_xi[m]).is_zero:
            return False
    return True


def _phi2_raw(z1, z2, w1, w2):
    zw = z2 * w2
    return (
        z1 * z1 * z1 * (w1 * w1 * w1 + w2 * w2 * w2) + zw * zw * zw,
        z1 * z1 * z1 * w1 * w1 * w2 + z1 * z1 * z2 * w2 * w2 * w2,
        z1 * z1 * z1 * w1 * w2 * w2 + z1 * z2 * z2 * w2 * w2 * w2,
        z1 * z1 * z2 * w1 * w1 * w1,
        z1 * z1 * z2 * w1 * w1 * w2,
        z1 * z1 * z2 * w1 * w2 * w2,
        z1 * z2 * z2 * w1 * w1 * w1,
        z1 * z2 * z2 * w1 * w1 * w2,
        z1 * z2 * z2 * w1 * w2 * w2,
        z2 * z2 * z2 * w1 * w1 * w1,
        z2 * z2 * z2 * w1 * w1 * w2,
        z2 * z2 * z2 * w1 * w2 * w2,
    )


def phi2(z: ProjPoint, w: ProjPoint) -> ProjPoint:
    """Map a point of CP^1 x CP^1 to CP^11."""
    return ProjPoint(_phi2_raw(z.coords[0], z.coords[1],
                               w.coords[0], w.coords[1]))


def phi2_vanishing_ok(u: ProjPoint) -> bool:
    """Coordinate pattern every image point satisfies: once the pure
    second-block-cubed coordinate vanishes, all nine mixed coordinates
    vanish and the two remaining mixed ones vanish together."""
    c = u.coords
    if not c[9].is_zero:
        return True
    if any(not c[k].is_zero for k in range(3, 12)):
        return False
    return c[1].is_zero == c[2].is_zero


# ---------------------------------------------------------------------------
# identification on the quotients
# ---------------------------------------------------------------------------

def _pair_key(a: ProjPoint, b: ProjPoint):
    return (a.normalized(), b.normalized())


def gamma_identified(p, q, P: MatrixP) -> bool:
    """Are two points of CP^1 x CP^(n-1) equal on the one-factor quotient?"""
    (za, ta), (zb, tb) = p, q
    if za.proj_eq(zb) and ta.proj_eq(tb):
        return True
    one_zero = ProjPoint((ONE, ZERO))
    zero_one = ProjPoint((ZERO, ONE))
    if za.proj_eq(one_zero) and zb.proj_eq(zero_one):
        return tb.proj_eq(ProjPoint(P.apply_vec(ta.coords)))
    if za.proj_eq(zero_one) and zb.proj_eq(one_zero):
        return ta.proj_eq(ProjPoint(P.apply_vec(tb.coords)))
    return False


def omega_orbit(p):
    """Identification class of a point of CP^1 x CP^1 on the two-factor
    quotient (a set of at most three points)."""
    one_zero = ProjPoint((ONE, ZERO))
    zero_one = ProjPoint((ZERO, ONE))
    seen = {}
    queue = [p]
    while queue:
        z, w = queue.pop()
        key = _pair_key(z, w)
        if key in seen:
            continue
        seen[key] = (z, w)
        if z.proj_eq(one_zero):
            queue.append((w, zero_one))
        if w.proj_eq(zero_one):
            queue.append((one_zero, z))
    return seen


def omega_identified(p, q) -> bool:
    return any(qk in omega_orbit(p) for qk in omega_orbit(q))


# ---------------------------------------------------------------------------
# randomized probes
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    kind: str
    samples: int
    seed: int
    duplicates_skipped: int = 0
    equation_failures: list = field(default_factory=list)
    jacobian_failures: list = field(default_factory=list)
    injectivity_violations: list = field(default_factory=list)
    identified_pairs_checked: int = 0
    identified_pair_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.equation_failures or self.jacobian_failures
                    or self.injectivity_violations
                    or self.identified_pair_failures)

    def to_json(self):
        return {
            "kind": self.kind,
            "samples": self.samples,
            "seed": self.seed,
            "duplicates_skipped": self.duplicates_skipped,
            "equation_failures": self.equation_failures,
            "jacobian_failures": self.jacobian_failures,
            "injectivity_violations": self.injectivity_violations,
            "identified_pairs_checked": self.identified_pairs_checked,
            "identified_pair_failures": self.identified_pair_failures,
            "passed": self.passed,
        }


def _rand_gq(rng: random.Random, span: int = 6) -> GaussQ:
    def rat():
        num = rng.randint(-span, span)
        den = rng.randint(1, 3)
        return Fraction(num, den)
    if rng.random() < 0.25:
        return GaussQ(rat(), rat())
    return GaussQ(rat())


def _rand_proj(rng: random.Random, dim: int, span: int = 6) -> ProjPoint:
    while True:
        coords = [_rand_gq(rng, span) for _ in range(dim + 1)]
        if any(not c.is_zero for c in coords):
            return ProjPoint(coords)


def _jacobian_rank_phi1(z: ProjPoint, t: ProjPoint, P: MatrixP) -> int:
    n = len(t.coords)
    nvars = n  # one affine z-variable plus n-1 affine t-variables
    pz = next(k for k, c in enumerate(z.coords) if not c.is_zero)
    pt = next(k for k, c in enumerate(t.coords) if not c.is_zero)
    var = 0
    zjets = []
    for k, c in enumerate(z.coords):
        if k == pz:
            zjets.append(Jet.const(ONE, nvars))
        else:
            grad = tuple(ONE if m == var else ZERO for m in range(nvars))
            zjets.append(Jet(c / z.coords[pz], grad))
            var += 1
    tjets = []
    for k, c in enumerate(t.coords):
        if k == pt:
            tjets.append(Jet.const(ONE, nvars))
        else:
            grad = tuple(ONE if m == var else ZERO for m in range(nvars))
            tjets.append(Jet(c / t.coords[pt], grad))
            var += 1
    u, xi, eta = _phi1_raw(zjets[0], zjets[1], tjets, P.inverse().rows)
    rows = []
    for block in (list(u), list(xi) + list(eta)):
        pivot = next(j for j in block if not j.val.is_zero)
        for j in block:
            rows.append(list((j / pivot).grad))
    return linalg.rank(rows)


def _jacobian_rank_phi2(z: ProjPoint, w: ProjPoint) -> int:
    nvars = 2
    jets = []
    var = 0
    for pt in (z, w):
        piv = next(k for k, c in enumerate(pt.coords) if not c.is_zero)
        pair = []
        for k, c in enumerate(pt.coords):
            if k == piv:
                pair.append(Jet.const(ONE, nvars))
            else:
                grad = tuple(ONE if m == var else ZERO for m in range(nvars))
                pair.append(Jet(c / pt.coords[piv], grad))
                var += 1
        jets.append(pair)
    img = _phi2_raw(jets[0][0], jets[0][1], jets[1][0], jets[1][1])
    pivot = next(j for j in img if not j.val.is_zero)
    rows = [list((j / pivot).grad) for j in img]
    return linalg.rank(rows)


def injectivity_probe(kind: str, data=None, samples: int = 100,
                      seed: int = 0, span: int = 6) -> ProbeReport:
    """Draw seeded random points, check the image relations, the exact
    Jacobian rank, pairwise injectivity through canonical image keys, and
    the explicitly glued pairs."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    report = ProbeReport(kind=kind, samples=samples, seed=seed)
    if kind == "gamma":
        P = data.P if hasattr(data, "P") else data
        n = P.n
        points = []
        keys = set()
        while len(points) < samples:
            p = (_rand_proj(rng, 1, span), _rand_proj(rng, n - 1, span))
            key = _pair_key(*p)
            if key in keys:
                report.duplicates_skipped += 1
                continue
            keys.add(key)
            points.append(p)
        images = {}
        for p in points:
            u, v = phi1(p[0], p[1], P)
            if not check_phi1_equations(u, v, P):
                report.equation_failures.append(repr(p))
            if _jacobian_rank_phi1(p[0], p[1], P) != n:
                report.jacobian_failures.append(repr(p))
            ikey = _pair_key(u, v)
            if ikey in images:
                other = images[ikey]
                if not gamma_identified(p, other, P):
                    report.injectivity_violations.append(
                        {"first": repr(other), "second": repr(p)})
            else:
                images[ikey] = p
        # explicitly glued pairs must collide
        for p in points[:10]:
            t = p[1]
            a = (ProjPoint((ONE, ZERO)), t)
            b = (ProjPoint((ZERO, ONE)), ProjPoint(P.apply_vec(t.coords)))
            report.identified_pairs_checked += 1
            ua, va = phi1(a[0], a[1], P)
            ub, vb = phi1(b[0], b[1], P)
            if not (ua.proj_eq(ub) and va.proj_eq(vb)):
                report.identified_pair_failures.append(repr((a, b)))
    elif kind == "omega":
        points = []
        keys = set()
        while len(points) < samples:
            p = (_rand_proj(rng, 1, span), _rand_proj(rng, 1, span))
            key = _pair_key(*p)
            if key in keys:
                report.duplicates_skipped += 1
                continue
            keys.add(key)
            points.append(p)
        images = {}
        for p in points:
            u = phi2(p[0], p[1])
            if not phi2_vanishing_ok(u):
                report.equation_failures.append(repr(p))
            if _jacobian_rank_phi2(p[0], p[1]) != 2:
                report.jacobian_failures.append(repr(p))
            ikey = u.normalized()
            if ikey in images:
                other = images[ikey]
                if not omega_identified(p, other):
                    report.injectivity_violations.append(
                        {"first": repr(other), "second": repr(p)})
            else:
                images[ikey] = p
        for p in points[:10]:
            t = p[1]
            a = (ProjPoint((ONE, ZERO)), t)
            b = (t, ProjPoint((ZERO, ONE)))
            report.identified_pairs_checked += 1
            if not phi2(*a).proj_eq(phi2(*b)):
                report.identified_pair_failures.append(repr((a, b)))
    else:
        raise ValueError(f"unknown map kind {kind!r}")
    return report
