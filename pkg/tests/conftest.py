import random

import pytest

from jmult import Ideal, RingContext


@pytest.fixture(scope="session")
def ctx2():
    """k[x,y] over the default prime."""
    return RingContext(("x", "y"), 32003)


@pytest.fixture(scope="session")
def ctx_family():
    """The one-dimensional quotient ring k[x,y]/(x^3 - x^2 y)."""
    base = RingContext(("x", "y"), 32003)
    x, y = base.var("x"), base.var("y")
    return RingContext(("x", "y"), 32003, relations=[x ** 3 - x ** 2 * y])


@pytest.fixture(scope="session")
def xy(ctx2):
    return ctx2.var("x"), ctx2.var("y")


def monomial_ideal(ctx, *exps):
    return Ideal(ctx, [ctx.monomial(e) for e in exps])


def random_monomial_ideal(ctx, rng: random.Random, max_gens=4, max_deg=5):
    n = ctx.nvars
    gens = []
    for _ in range(rng.randrange(1, max_gens + 1)):
        e = tuple(rng.randrange(max_deg + 1) for _ in range(n))
        if any(e):
            gens.append(ctx.monomial(e))
    return Ideal(ctx, gens)
