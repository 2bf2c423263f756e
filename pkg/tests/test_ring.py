import random

import pytest

from jmult import GREVLEX, LEX, PrimeField, RingContext
from jmult.ring import ContextMismatchError, MonomialOrder, format_polynomial


def test_prime_validation():
    PrimeField(32003)
    with pytest.raises(ValueError):
        PrimeField(32004)
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(1 << 32)


def test_field_axioms_random():
    f = PrimeField(32003)
    rng = random.Random(11)
    for _ in range(300):
        a, b, c = (rng.randrange(f.p) for _ in range(3))
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_poly_additive_inverse(ctx2, xy):
    x, y = xy
    assert (x + (-x)).is_zero()
    assert (x + y) + (x - y) == x.scale(2)
    f = x * y + y ** 3
    assert f + ctx2.zero == f


def test_poly_products(ctx2, xy):
    x, y = xy
    assert (x + y) * (x - y) == x * x - y * y
    f = x ** 2 + y
    assert f * ctx2.one == f
    t = 4
    assert x * y ** t == ctx2.monomial((1, t))


def _random_poly(ctx, rng, max_terms=20):
    f = ctx.zero
    for _ in range(rng.randrange(1, max_terms + 1)):
        f = f + ctx.monomial((rng.randrange(5), rng.randrange(5)),
                             rng.randrange(ctx.char))
    return f


def test_poly_multiplication_commutative_associative(ctx2):
    rng = random.Random(13)
    for _ in range(25):
        f, g, h = (_random_poly(ctx2, rng) for _ in range(3))
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_context_mismatch(ctx2):
    other = RingContext(("x", "y"), 101)
    with pytest.raises(ContextMismatchError):
        ctx2.var("x") + other.var("x")


def test_compare_grevlex_degree_tie():
    # x^2 beats xy at equal degree, and lex puts x above any power of y
    assert GREVLEX.compare((2, 0), (1, 1)) > 0
    assert GREVLEX.compare((1, 1), (1, 1)) == 0
    assert LEX.compare((1, 0), (0, 3)) > 0
    with pytest.raises(ValueError):
        GREVLEX.compare((1, 0), (1, 0, 0))


@pytest.mark.parametrize("order", [GREVLEX, LEX, MonomialOrder("block", 1)])
def test_order_is_multiplicative_total_order(order):
    rng = random.Random(5)
    exps = [tuple(rng.randrange(6) for _ in range(3)) for _ in range(40)]
    for a in exps[:12]:
        for b in exps[12:24]:
            ca = order.compare(a, b)
            assert ca == -order.compare(b, a)
            for c in exps[24:30]:
                if ca > 0 and order.compare(b, c) > 0:
                    assert order.compare(a, c) > 0
                prod_a = tuple(u + w for u, w in zip(a, c))
                prod_b = tuple(u + w for u, w in zip(b, c))
                assert order.compare(prod_a, prod_b) == ca
    # 1 is smallest: a well-order needs the unit at the bottom
    one = (0, 0, 0)
    for a in exps:
        if a != one:
            assert order.compare(a, one) > 0


def test_format_round_trip_style(ctx2, xy):
    x, y = xy
    f = x ** 3 - x ** 2 * y
    assert format_polynomial(f) == "x^3-x^2*y"
    assert format_polynomial(ctx2.zero) == "0"
    assert format_polynomial(ctx2.constant(5)) == "5"
    assert format_polynomial(-x) == "-x"
