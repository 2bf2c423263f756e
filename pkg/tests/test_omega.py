import pytest

from jmult import (Ideal, OmegaEvaluator, fit_hilbert_polynomial,
                   general_minimal_reduction, j_one_depth_formula, j_via_sums,
                   master_identity_check, pair_length)
from jmult.omega import delta_operator

from conftest import monomial_ideal


@pytest.fixture(scope="module")
def m2_pipeline(ctx2):
    ideal = monomial_ideal(ctx2, (2, 0), (1, 1), (0, 2))
    red, r = general_minimal_reduction(ideal, seed=0)
    rec = fit_hilbert_polynomial(ideal, extend_to=r + 7)
    ev = OmegaEvaluator(ideal, red)
    return ideal, red, r, rec, ev


def test_delta_operator_basics():
    assert delta_operator(lambda n: 7, 1, 5) == 0
    assert delta_operator(lambda n: n * n, 2, 5) == 2
    assert delta_operator(lambda n: n * n * n, 0, 4) == 64


def test_omega_zero_dimension_one(ctx_family):
    """For a primary ideal in the one-dimensional ring the two pieces of the
    degree-zero correction cancel."""
    X = ctx_family.var("x")
    m = Ideal.maximal(ctx_family)
    red, r = general_minimal_reduction(m, seed=0)
    ev = OmegaEvaluator(m, red)
    om = ev.omega(0)
    assert om.total.as_int() == 0
    assert ev.omega(1).total.as_int() == 0
    assert ev.omega(3).total.as_int() == 0


def test_omega_zero_m_primary_2d(m2_pipeline):
    ideal, red, r, rec, ev = m2_pipeline
    # identity-derived expected value at degree zero
    lam = pair_length(ideal, red.full).as_int()
    assert ev.omega(0).total.as_int() == rec.delta_p_minus_h(0) - lam
    breakdown = ev.omega(1)
    assert breakdown.total.is_finite
    assert dict(breakdown.terms)  # named sub-terms serialize


def test_breakdown_total_is_sum_of_terms(m2_pipeline):
    ideal, red, r, rec, ev = m2_pipeline
    for n in range(4):
        b = ev.omega(n)
        vals = [v for _, v in b.terms]
        if all(isinstance(v, int) for v in vals):
            assert b.total.as_int() == sum(vals)


def test_master_identity_m_primary_suite(ctx2):
    for exps in [((1, 0), (0, 1)), ((2, 0), (1, 1), (0, 2)), ((2, 0), (0, 2)),
                 ((3, 0), (1, 1), (0, 3)),
                 ((4, 0), (3, 1), (1, 3), (0, 4))]:
        ideal = monomial_ideal(ctx2, *exps)
        red, r = general_minimal_reduction(ideal, seed=0)
        nmax = r + 4
        rec = fit_hilbert_polynomial(ideal, extend_to=nmax + 3)
        ev = OmegaEvaluator(ideal, red)
        rep = master_identity_check(rec, ev, nmax)
        assert rep.all_hold, (exps, rep.rows)


def test_master_identity_failure_visible_without_hypotheses(ctx_family):
    """On the principal family the residual hypotheses fail and the identity
    degrades to non-evaluable rows rather than lying."""
    X, Y = ctx_family.var("x"), ctx_family.var("y")
    ideal = Ideal(ctx_family, [X * Y])
    red, r = general_minimal_reduction(ideal, seed=0)
    rec = fit_hilbert_polynomial(ideal, extend_to=r + 5)
    ev = OmegaEvaluator(ideal, red)
    rep = master_identity_check(rec, ev, r + 3)
    assert not rep.all_hold


def test_j_via_sums_routes(ctx2, m2_pipeline):
    ideal, red, r, rec, ev = m2_pipeline
    assert j_via_sums(ev, 1, r).as_int() == 1 == rec.coefficients[1]
    assert j_via_sums(ev, 2, r).as_int() == 0 == rec.coefficients[2]
    param = monomial_ideal(ctx2, (1, 0), (0, 1))
    redp, rp = general_minimal_reduction(param, seed=0)
    evp = OmegaEvaluator(param, redp)
    assert j_via_sums(evp, 1, rp).as_int() == 0


def test_j_one_depth_formula(ctx2, m2_pipeline):
    ideal, red, r, rec, ev = m2_pipeline
    assert j_one_depth_formula(ideal, red).as_int() == 1
    m = Ideal.maximal(ctx2)
    redm, _ = general_minimal_reduction(m, seed=0)
    assert j_one_depth_formula(m, redm).as_int() == 0


def test_readings_coincide_in_low_dimension(m2_pipeline):
    ideal, red, r, rec, _ = m2_pipeline
    ev1 = OmegaEvaluator(ideal, red, reading="x1")
    ev2 = OmegaEvaluator(ideal, red, reading="xnext")
    for n in range(r + 3):
        assert ev1.omega(n).total == ev2.omega(n).total


def test_unknown_reading_rejected(m2_pipeline):
    ideal, red, *_ = m2_pipeline
    with pytest.raises(ValueError):
        OmegaEvaluator(ideal, red, reading="x2")
