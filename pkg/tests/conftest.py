import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bamod.exprat import ExpRat
from bamod.gaussq import GaussQ
from bamod.presets import get_preset


@pytest.fixture(scope="session")
def gamma2():
    return get_preset("gamma-n2")


@pytest.fixture(scope="session")
def gamma3():
    return get_preset("gamma-n3")


@pytest.fixture(scope="session")
def omega():
    return get_preset("omega")


def rand_gq(rng: random.Random, span: int = 6) -> GaussQ:
    from fractions import Fraction
    re = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    im = Fraction(rng.randint(-span, span), rng.randint(1, 3)) \
        if rng.random() < 0.4 else 0
    return GaussQ(re, im)


def rand_exprat(rng: random.Random, ctx, nonzero: bool = False) -> ExpRat:
    while True:
        minexp = rng.randint(-2, 0)
        num = [rand_gq(rng, 4) for _ in range(rng.randint(1, 3))]
        den = [rand_gq(rng, 4) for _ in range(rng.randint(1, 3))]
        if all(c.is_zero for c in den):
            continue
        value = ExpRat(ctx, minexp, num, den)
        if nonzero and value.is_zero:
            continue
        return value
