"""Built-in spectral data sets, their reference bases and operators.

Three presets ship with the package:

* ``gamma-n2`` -- the two-variable one-factor gluing with P the swap,
  A = Lambda = 1 and pole form -z1*t1 - z2*t2 (q = exp(-i(x+y)));
* ``gamma-n3`` -- a three-variable datum with P = diag(1,2,3), used to
  exercise the rank combinatorics beyond n = 2;
* ``omega`` -- the two-factor gluing with B = Lambda = 1 and pole form
  z1*w1 + z1*w2 + z2*w2 (q = exp(x-y)).

For ``gamma-n2`` and ``omega`` the preset also carries a distinguished
reference basis, the standard meromorphic functions, and the reference
operators written exactly in q-notation.  Operator entries depend on the
basis, so reproducing these matrices requires the reference basis, not
the echelon one.

Every reference coefficient was cross-checked against the operators'
defining eigenvalue identity by independent symbolic differentiation;
two further checks live in the test suite (the reference operators must
equal freshly built ones exactly, and the shipped golden files must
equal their in-code source byte for byte).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Tuple

from .bamodule import ModuleBasis, ModuleElement
from .biform import MatrixP, parse_form
from .diffop import DiffOp
from .exprat import ExpRat
from .gaussq import GaussQ
from .mero import MeroFunc
from .spectral import GammaData, OmegaData

PRESET_NAMES = ("gamma-n2", "gamma-n3", "omega")
GOLDEN_FILES = {"gamma-n2": "golden_gamma_n2.json", "omega": "golden_omega.json"}


@dataclass
class Preset:
    name: str
    data: object
    basis: Optional[ModuleBasis]
    lambdas: Tuple[MeroFunc, ...]
    lambda_names: Tuple[str, ...]


def _gamma_n2() -> GammaData:
    P = MatrixP([[0, 1], [1, 0]])
    f = parse_form("-z1*t1 - z2*t2", n=2)
    f1 = parse_form("z1*t2 + z2*t1 - i*z2*t2", n=2)
    f2 = parse_form("-z1*t2 - z2*t1 - i*z2*t2", n=2)
    mi = GaussQ(0, -1)
    return GammaData(2, P, 1, 1, f, [(f1, mi), (f2, mi)])


def _gamma_n3() -> GammaData:
    P = MatrixP([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    f = parse_form("z1*t1 + z2*t1 + 2*z1*t2 + z2*t2 + 3*z1*t3 + z2*t3", n=3)
    f1 = parse_form("2*z1*t1 + z2*t1 + 2*z1*t2 + 3*z1*t3", n=3)
    f2 = parse_form("z1*t1 + 4*z1*t2 + z2*t2 + 3*z1*t3", n=3)
    f3 = parse_form("z1*t1 + 2*z1*t2 + 6*z1*t3 + z2*t3", n=3)
    return GammaData(3, P, 1, 1, f, [(f1, 1), (f2, 1), (f3, 1)])


def _omega() -> OmegaData:
    g = parse_form("z1*w1 + z1*w2 + z2*w2", n=2)
    g1 = parse_form("z1*w1 + 2*z2*w1 - z2*w2", n=2)
    g2 = parse_form("-z1*w1 + 2*z2*w1 + z2*w2", n=2)
    return OmegaData(1, 1, g, [(g1, 1), (g2, GaussQ(-1))])


def get_preset(name: str) -> Preset:
    if name == "gamma-n2":
        data = _gamma_n2()
        ctx = data.context()
        basis = ModuleBasis(data, [
            ModuleElement(data, 1, parse_form("z1*t1 + q*z2*t2", n=2, ctx=ctx)),
            ModuleElement(data, 1, parse_form("z1*t2 + q*z2*t1", n=2, ctx=ctx)),
        ])
        lams = (
            MeroFunc(data, 1, parse_form("2*z1*t2 + 2*z2*t1", n=2)),
            MeroFunc(data, 2, parse_form("-i*z1*z2*t1^2 + i*z1*z2*t2^2", n=2)),
            MeroFunc(data, 2,
                     parse_form("z1^2*t2^2 + 3*z1*z2*t1*t2 + z2^2*t1^2", n=2)),
        )
        return Preset(name, data, basis, lams, ("lambda1", "lambda2", "lambda3"))
    if name == "gamma-n3":
        return Preset(name, _gamma_n3(), None, (), ())
    if name == "omega":
        data = _omega()
        ctx = data.context()
        basis = ModuleBasis(data, [
            ModuleElement(data, 1, parse_form("z2*w1", n=2).to_exprat(ctx)),
            ModuleElement(data, 1,
                          parse_form("q^-1*z1*w1 + z1*w2 + q*z2*w2", n=2, ctx=ctx)),
        ])
        lams = (
            MeroFunc(data, 1, parse_form("z2*w1", n=2)),
            MeroFunc(data, 2, parse_form("z1*z2*w1^2", n=2)),
            MeroFunc(data, 2, parse_form("z1*w1*z2*w2", n=2)),
            MeroFunc(data, 2, parse_form("z1*z2*w2^2 + z1^2*w1*w2", n=2)),
        )
        return Preset(name, data, basis, lams,
                      ("lambda1", "lambda2", "lambda3", "lambda4"))
    raise KeyError(f"unknown preset {name!r}; available: {PRESET_NAMES}")


# ---------------------------------------------------------------------------
# reference operators, transcribed in q-notation
# ---------------------------------------------------------------------------

def _frac(a, b):
    return GaussQ(a) / GaussQ(b)


def reference_operators(name: str) -> dict:
    """Exact reference operators for a preset, keyed by lambda name.

    Stored in the q-normal form.  The familiar trigonometric and
    exponential shorthands translate as: with q = exp(-i(x+y)),
    cot((x+y)/2) is i(1+q)/(1-q) and 1/sin^2((x+y)/2) is -4q/(1-q)^2;
    with q = exp(x-y), ratios of exp(x) and exp(y) become Laurent terms
    in q.  Every coefficient is pinned by the eigenvalue identity
    D(lambda) Psi = lambda Psi on the reference basis, which the test
    suite asserts exactly.
    """
    preset = get_preset(name)
    ctx = preset.data.context()
    q = ExpRat.q_power(ctx, 1)
    qi = ExpRat.q_power(ctx, -1)
    one = ExpRat.one(ctx)

    def const(a, b=1):
        return ExpRat.const(ctx, _frac(a, b))

    if name == "gamma-n2":
        i = ExpRat.const(ctx, GaussQ(0, 1))
        ct = i * (one + q) / (one - q)          # cot((x+y)/2)
        s2 = const(-4) * q / (one - q) ** 2     # 1/sin((x+y)/2)^2
        DX, DY, DX2, DY2, C0 = (1, 0), (0, 1), (2, 0), (0, 2), (0, 0)
        half = const(1, 2)
        quarter = const(1, 4)
        d1 = DiffOp(ctx, 2, {
            (0, 0): {DX: one, DY: -one},
            (1, 1): {DX: one, DY: -one},
        })
        d2 = DiffOp(ctx, 2, {
            (0, 0): {DY2: quarter, DX2: -quarter, DX: half * ct, DY: -half * ct},
            (0, 1): {C0: ct, DX: -half, DY: -half},
            (1, 0): {DX: -half, DY: -half},
            (1, 1): {DY2: quarter, DX2: -quarter},
        })
        d3 = DiffOp(ctx, 2, {
            (0, 0): {DX2: half, DY2: half, DX: -half * ct, DY: -half * ct},
            (1, 0): {DX: quarter * s2, DY: -quarter * s2},
            (1, 1): {C0: half * s2, DX: -half * ct, DY: -half * ct,
                     DX2: half, DY2: half},
        })
        return {"lambda1": d1, "lambda2": d2, "lambda3": d3}

    if name == "omega":
        DX, DY, DX2, DY2, DXY, C0 = (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (0, 0)
        qm1 = q - one
        d1 = DiffOp(ctx, 2, {
            (0, 0): {DX: const(1, 4), DY: const(1, 4)},
            (1, 1): {DX: const(1, 4), DY: const(1, 4)},
        })
        d2 = DiffOp(ctx, 2, {
            (0, 0): {DX2: q / (const(8) * qm1), DY2: -q / (const(8) * qm1),
                     DX: -q / (const(4) * qm1 ** 2),
                     DY: -q / (const(4) * qm1 ** 2)},
            (0, 1): {DX2: q / (const(16) * qm1 ** 2),
                     DXY: q / (const(8) * qm1 ** 2),
                     DY2: q / (const(16) * qm1 ** 2)},
            (1, 0): {DX2: (qi - q - const(2)) * const(1, 8),
                     DY2: (q - qi - const(2)) * const(1, 8),
                     DXY: const(1, 2),
                     DX: (q + q ** 2 + const(5) - qi) / (const(4) * qm1),
                     DY: (const(3) * q - q ** 2 + const(3) + qi) / (const(-4) * qm1),
                     C0: -(const(2) * q + one) / qm1 ** 2},
            (1, 1): {DX2: -q / (const(8) * qm1), DXY: const(-1, 4),
                     DY2: -(q - const(2)) / (const(8) * qm1),
                     DX: (const(2) * q + one) / (const(4) * qm1 ** 2),
                     DY: (const(2) * q + one) / (const(4) * qm1 ** 2)},
        })
        d3 = DiffOp(ctx, 2, {
            (0, 0): {DX2: -(q + one) / (const(8) * qm1),
                     DY2: (q + one) / (const(8) * qm1),
                     DX: (q ** 2 + one) / (const(4) * qm1 ** 2),
                     DY: (q ** 2 + one) / (const(4) * qm1 ** 2)},
            (0, 1): {DX2: -q / (const(8) * qm1 ** 2),
                     DXY: -q / (const(4) * qm1 ** 2),
                     DY2: -q / (const(8) * qm1 ** 2)},
            (1, 0): {DX2: (const(2) + q - qi) * const(1, 4),
                     DXY: -one,
                     DY2: (const(2) - q + qi) * const(1, 4),
                     DX: (const(2) * q + q ** 2 + const(4) - qi) / (const(-2) * qm1),
                     DY: (const(4) * q - q ** 2 + const(2) + qi) / (const(2) * qm1),
                     C0: (q ** 2 + const(4) * q + one) / qm1 ** 2},
            (1, 1): {DX2: (const(3) * q - one) / (const(8) * qm1),
                     DXY: const(1, 2),
                     DY2: (q - const(3)) / (const(8) * qm1),
                     DX: const(-3, 2) * q / qm1 ** 2,
                     DY: const(-3, 2) * q / qm1 ** 2},
        })
        d4 = DiffOp(ctx, 2, {
            (0, 0): {DX2: (q + const(3)) / (const(4) * qm1),
                     DXY: const(1, 2),
                     DY2: -(const(3) * q + one) / (const(4) * qm1),
                     DX: -(q ** 2 + const(3)) / (const(2) * qm1 ** 2),
                     DY: -(const(3) * q ** 2 + one) / (const(2) * qm1 ** 2),
                     C0: const(-2) * q / qm1 ** 2},
            (0, 1): {DX2: q / (const(2) * qm1 ** 2),
                     DXY: q / qm1 ** 2,
                     DY2: q / (const(2) * qm1 ** 2),
                     DX: q / (const(2) * qm1 ** 2),
                     DY: q / (const(2) * qm1 ** 2)},
            (1, 0): {DX2: qi - q - const(2),
                     DXY: const(4),
                     DY2: q - qi - const(2),
                     DX: (const(5) * q + q ** 2 + const(9) - const(3) * qi) / qm1,
                     DY: (const(9) * q - const(3) * q ** 2 + const(5) + qi) / (one - q),
                     C0: const(2) * (q ** 3 + qi - const(6) * q - const(4) * q ** 2
                                     - const(4)) / qm1 ** 2},
            (1, 1): {DX2: -(const(7) * q - const(3)) / (const(4) * qm1),
                     DXY: const(-3, 2),
                     DY2: -(const(3) * q - const(7)) / (const(4) * qm1),
                     DX: -(q ** 2 + const(3) - const(16) * q) / (const(2) * qm1 ** 2),
                     DY: -(const(3) * q ** 2 + one - const(16) * q) / (const(2) * qm1 ** 2)},
        })
        return {"lambda1": d1, "lambda2": d2, "lambda3": d3, "lambda4": d4}

    raise KeyError(f"no reference operators for preset {name!r}")


# ---------------------------------------------------------------------------
# golden files
# ---------------------------------------------------------------------------

def golden_payload(name: str) -> dict:
    """JSON-ready payload of the reference operators for a preset."""
    ops = reference_operators(name)
    return {
        "preset": name,
        "operators": {key: ops[key].to_json() for key in sorted(ops)},
    }


def dump_golden(name: str) -> str:
    return json.dumps(golden_payload(name), indent=2, sort_keys=True) + "\n"


def load_golden(name: str, path=None) -> dict:
    """Load golden operators from the packaged data (or an explicit path)."""
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        text = (resources.files("bamod") / "data" / GOLDEN_FILES[name]) \
            .read_text(encoding="utf-8")
        payload = json.loads(text)
    return {key: DiffOp.from_json(obj)
            for key, obj in payload["operators"].items()}
