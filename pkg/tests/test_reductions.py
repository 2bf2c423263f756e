import random

import pytest

from jmult import (Ideal, analytic_spread, e_one_bar, fiber_length_sum,
                   general_minimal_reduction, is_reduction, j_zero,
                   local_ideal_equal, reduction_number, reduction_ring,
                   residual_height_check, sample_general_elements,
                   valabrega_valla_check)

from conftest import monomial_ideal


@pytest.fixture(scope="module")
def m2_setup(ctx2):
    ideal = monomial_ideal(ctx2, (2, 0), (1, 1), (0, 2))
    red, r = general_minimal_reduction(ideal, seed=0)
    return ideal, red, r


def test_sampling_contract(ctx2):
    ideal = monomial_ideal(ctx2, (2, 0), (1, 1), (0, 2))
    a = sample_general_elements(ideal, 2, seed=9)
    b = sample_general_elements(ideal, 2, seed=9)
    assert [str(e) for e in a.elements] == [str(e) for e in b.elements]
    assert all(ideal.contains(e) for e in a.elements)
    c = sample_general_elements(ideal, 2, seed=10)
    assert [str(e) for e in a.elements] != [str(e) for e in c.elements]
    m = Ideal.maximal(ctx2)
    lin = sample_general_elements(m, 1, seed=0)
    assert not lin.elements[0].is_zero()
    assert lin.elements[0].degree() == 1


def test_analytic_spread_examples(ctx2, ctx_family, xy):
    x, y = xy
    assert analytic_spread(Ideal(ctx2, [x])) == 1
    assert analytic_spread(Ideal.maximal(ctx2)) == 2
    assert analytic_spread(monomial_ideal(ctx2, (2, 0), (1, 1), (0, 2))) == 2
    X, Y = ctx_family.var("x"), ctx_family.var("y")
    for t in range(3):
        assert analytic_spread(Ideal(ctx_family, [X * Y ** t])) == 1


def test_reduction_number_examples(ctx2):
    m = Ideal.maximal(ctx2)
    assert reduction_number(m, m) == 0
    m2 = monomial_ideal(ctx2, (2, 0), (1, 1), (0, 2))
    param = monomial_ideal(ctx2, (2, 0), (0, 2))
    assert reduction_number(m2, param) == 1
    assert reduction_number(m2, m2) == 0
    assert is_reduction(m2, param)
    with pytest.raises(ValueError):
        reduction_number(param, m2)


def test_local_equality_vs_global(ctx2, xy):
    x, y = xy
    one = ctx2.one
    # equal at the origin, different globally
    a = Ideal(ctx2, [x])
    b = Ideal(ctx2, [x * (y - one), x * x])
    assert a != b
    assert local_ideal_equal(a, b)


def test_general_minimal_reduction(ctx2, ctx_family, m2_setup):
    ideal, red, r = m2_setup
    assert red.count == 2
    assert r == 1
    m = Ideal.maximal(ctx2)
    redm, rm = general_minimal_reduction(m, seed=0)
    assert rm == 0
    X = ctx_family.var("x")
    Y = ctx_family.var("y")
    principal = Ideal(ctx_family, [X * Y])
    redp, rp = general_minimal_reduction(principal, seed=0)
    assert rp == 0 and redp.count == 1


def test_reduction_number_seed_stable(ctx2):
    for exps in [((1, 0), (0, 1)), ((2, 0), (1, 1), (0, 2)),
                 ((3, 0), (1, 1), (0, 3))]:
        ideal = monomial_ideal(ctx2, *exps)
        rs = {general_minimal_reduction(ideal, seed=s)[1] for s in (0, 1, 2)}
        assert len(rs) == 1


def test_residual_height_surrogate(ctx2, ctx_family, m2_setup):
    ideal, red, _ = m2_setup
    assert residual_height_check(ideal, red).all_passed
    X, Y = ctx_family.var("x"), ctx_family.var("y")
    for t in (0, 1, 2, 3):
        principal = Ideal(ctx_family, [X * Y ** t])
        redp, _ = general_minimal_reduction(principal, seed=0)
        assert not residual_height_check(principal, redp).all_passed


def test_reduction_ring(ctx2, m2_setup):
    ideal, red, _ = m2_setup
    ring = reduction_ring(ideal, red)
    assert ring.dim_ok and ring.primary_ok
    m = Ideal.maximal(ctx2)
    redm, _ = general_minimal_reduction(m, seed=0)
    ringm = reduction_ring(m, redm)
    assert ringm.dim_ok and ringm.primary_ok


def test_j_zero_examples(ctx2, ctx_family, m2_setup):
    ideal, red, _ = m2_setup
    assert j_zero(ideal, red).as_int() == 4
    m = Ideal.maximal(ctx2)
    redm, _ = general_minimal_reduction(m, seed=0)
    assert j_zero(m, redm).as_int() == 1
    X, Y = ctx_family.var("x"), ctx_family.var("y")
    for t in (0, 1, 2):
        principal = Ideal(ctx_family, [X * Y ** t])
        redp, _ = general_minimal_reduction(principal, seed=0)
        assert j_zero(principal, redp).as_int() == t + 1


def test_e_one_bar_examples(ctx2, m2_setup):
    ideal, red, _ = m2_setup
    assert e_one_bar(ideal, red).as_int() == 1
    m = Ideal.maximal(ctx2)
    redm, _ = general_minimal_reduction(m, seed=0)
    assert e_one_bar(m, redm).as_int() == 0
    param = monomial_ideal(ctx2, (1, 0), (0, 1))
    redpar, _ = general_minimal_reduction(param, seed=3)
    assert e_one_bar(param, redpar).as_int() == 0


def test_valabrega_valla_good_case(ctx2, m2_setup):
    ideal, red, r = m2_setup
    rep = valabrega_valla_check(ideal, red, nmax=4, an_asserted=True)
    assert all(rep.per_n)
    assert rep.sum_value.as_int() == 1
    assert rep.e1bar.as_int() == 1
    assert rep.condition_a and rep.condition_b and rep.equivalent
    assert "holds" in rep.depth_verdict


def test_valabrega_valla_failing_case(ctx2):
    """The depth-zero staircase: the summation exceeds e1 and the
    intersection condition fails at the matching degree."""
    ideal = monomial_ideal(ctx2, (4, 0), (3, 1), (1, 3), (0, 4))
    red, r = general_minimal_reduction(ideal, seed=0)
    rep = valabrega_valla_check(ideal, red, nmax=r + 4, an_asserted=True)
    assert rep.condition_a is False
    assert rep.condition_b is False
    assert rep.equivalent is True
    assert rep.sum_value.as_int() > rep.e1bar.as_int()
    assert "fails" in rep.depth_verdict


def test_failing_case_located_by_search(ctx2):
    """Randomized search over equigenerated m-primary staircases with gaps
    must turn up at least one ideal violating the summation condition; the
    oracle confirms e1 on every candidate along the way."""
    from jmult import oracle_hilbert_coefficients, MonomialIdeal
    rng = random.Random(2024)
    found = None
    for _ in range(40):
        a = rng.randrange(3, 6)
        diag = [(a - i, i) for i in range(a + 1)]
        keep = [diag[0], diag[-1]] + [e for e in diag[1:-1] if rng.random() < 0.5]
        cand = monomial_ideal(ctx2, *sorted(set(keep)))
        red, r = general_minimal_reduction(cand, seed=1)
        if r is None:
            continue
        total = fiber_length_sum(cand, red.full)
        e1 = e_one_bar(cand, red)
        if not (total.is_finite and e1.is_finite):
            continue
        e_oracle = oracle_hilbert_coefficients(MonomialIdeal.from_ideal(cand))
        assert e1.as_int() == e_oracle[1]
        if total.as_int() > e1.as_int():
            found = (cand, total.as_int(), e1.as_int())
            break
    assert found is not None, "search produced no failing instance"
