"""General elements, minimal reductions, analytic spread, residual-height
surrogates, and the one-dimensional reduction ring.

Random coefficients are drawn from the whole prime field, so "general" holds
with probability 1 - O(deg/p); every sample is deterministic in (generator
order, seed) and the random stream is split by element index rather than call
order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ideals import Ideal, ring_dimension
from .lengths import (LengthValue, TruncationPolicy, loc_quotient_length,
                      pair_length)
from .ring import Polynomial, RingContext, extend_context, lift_poly

REDUCTION_NUMBER_CAP = 30
RETRY_CAP = 8
E1_TERM_CAP = 64


class ReductionSearchError(RuntimeError):
    """No sampled candidate was a reduction within the retry cap; either very
    bad luck over a large field, or the analytic spread is misreported."""


@dataclass(frozen=True)
class GeneralReduction:
    """A sampled sequence of general elements of I and its partial ideals
    J_i = (x_1, ..., x_i); J_0 is the zero ideal."""

    ideal: Ideal
    elements: tuple
    seed: int

    @property
    def count(self) -> int:
        return len(self.elements)

    def j(self, i: int) -> Ideal:
        if not 0 <= i <= self.count:
            raise IndexError("partial reduction index out of range")
        return Ideal(self.ideal.ctx, self.elements[:i])

    @property
    def full(self) -> Ideal:
        return self.j(self.count)


def sample_general_elements(ideal: Ideal, s: int, seed: int) -> GeneralReduction:
    """s field-random combinations of the listed generators of the ideal."""
    if ideal.is_zero() or s < 1:
        raise ValueError("need a nonzero ideal and at least one element")
    p = ideal.ctx.char
    elements = []
    for i in range(s):
        rng = random.Random(seed * 1_000_003 + i)
        x = ideal.ctx.zero
        for g in ideal.gens:
            x = x + g.scale(rng.randrange(p))
        elements.append(x)
    return GeneralReduction(ideal=ideal, elements=tuple(elements), seed=seed)


# --------------------------------------------------------------------------
# analytic spread via the special fiber presentation


def analytic_spread(ideal: Ideal) -> int:
    """Krull dimension of the special fiber: present the blowup algebra with
    one T-variable per generator and an auxiliary u, saturate by u, eliminate
    u, then set the ambient variables to zero."""
    if ideal.is_unit() or ideal.is_zero():
        raise ValueError("analytic spread needs a proper nonzero ideal")
    ctx = ideal.ctx
    key = ("spread", ideal.key())
    got = ctx._cache.get(key)
    if got is not None:
        return got

    t = len(ideal.gens)
    t_names = tuple(f"@T{k}" for k in range(t))
    ctx_xt = extend_context(ctx, t_names)
    ext = extend_context(ctx_xt, ("@u",))
    u = ext.var(ext.nvars - 1)
    rows = []
    for k, g in enumerate(ideal.gens):
        rows.append(ext.var(ctx.nvars + k) - u * lift_poly(g, ext))
    graph = Ideal(ext, rows)
    saturated = graph.saturate(Ideal(ext, [u]))

    from .ideals import _eliminate_trailing
    rees = _eliminate_trailing(ext, ctx_xt, list(saturated.gens), 1,
                               include_relations=True)

    ctx_t = RingContext(t_names, ctx.char)
    fiber_rows = []
    for g in rees.gens:
        g0 = g.substitute_zero(range(ctx.nvars))
        if not g0.is_zero():
            fiber_rows.append(Polynomial(ctx_t, {e[ctx.nvars:]: c
                                                 for e, c in g0.terms.items()}))
    spread = Ideal(ctx_t, fiber_rows).dimension()
    ctx._cache[key] = spread
    return spread


# --------------------------------------------------------------------------
# reductions and reduction numbers


def is_reduction(ideal: Ideal, j: Ideal, cap: int = REDUCTION_NUMBER_CAP) -> bool:
    return reduction_number(ideal, j, cap) is not None


def local_ideal_equal(a: Ideal, b: Ideal,
                      policy: TruncationPolicy | None = None) -> bool:
    """Equality of ideals in the local ring at the origin, for b ⊆ a: the
    m-local length of a/b vanishes.  General elements of an ideal may differ
    from it at points away from the origin, so the global basis comparison
    would be too strict here."""
    if a == b:
        return True
    v = pair_length(a, b, policy)
    return v.is_finite and v.value == 0


def reduction_number(ideal: Ideal, j: Ideal,
                     cap: int = REDUCTION_NUMBER_CAP):
    """Least r with J I^r = I^(r+1) locally at the origin, or None when no
    r <= cap works."""
    if not ideal.contains_ideal(j):
        raise ValueError("candidate reduction is not contained in the ideal")
    for r in range(cap + 1):
        if local_ideal_equal(ideal ** (r + 1), j * (ideal ** r)):
            return r
    return None


def general_minimal_reduction(ideal: Ideal, seed: int = 0,
                              retry_cap: int = RETRY_CAP,
                              cap: int = REDUCTION_NUMBER_CAP):
    """Sample analytic-spread many general elements and verify they reduce the
    ideal; retries with fresh seeds are reported through the returned seed.

    Returns (reduction, r).  A retry indicates either bad luck or a bug, so
    exhaustion raises rather than returning a wrong answer.
    """
    spread = analytic_spread(ideal)
    last = None
    for attempt in range(retry_cap):
        red = sample_general_elements(ideal, spread, seed + attempt)
        r = reduction_number(ideal, red.full, cap)
        if r is not None:
            return red, r
        last = red
    raise ReductionSearchError(
        f"no general {spread}-element reduction found in {retry_cap} attempts "
        f"from seed {seed} (last candidate {[str(e) for e in last.elements]})")


# --------------------------------------------------------------------------
# residual-height surrogate for the G_d condition


@dataclass(frozen=True)
class ResidualHeightReport:
    """Per-index verdicts of the computable residual-intersection surrogate:
    codim(J_i : I) >= i and codim((J_i : I) + I) >= i + 1."""

    entries: tuple  # (i, codim_colon, codim_colon_plus, passed)
    all_passed: bool

    def to_json(self):
        return {
            "entries": [
                {"i": i, "codim_residual": a, "codim_residual_plus_ideal": b,
                 "passed": ok}
                for (i, a, b, ok) in self.entries
            ],
            "passed": self.all_passed,
        }


def residual_height_check(ideal: Ideal, red: GeneralReduction) -> ResidualHeightReport:
    d = ring_dimension(ideal.ctx)
    entries = []
    ok_all = True
    for i in range(d):
        colon = red.j(i).colon(ideal)
        c1 = colon.codimension()
        c2 = (colon + ideal).codimension()
        ok = c1 >= i and c2 >= i + 1
        ok_all = ok_all and ok
        entries.append((i, c1, c2, ok))
    return ResidualHeightReport(entries=tuple(entries), all_passed=ok_all)


# --------------------------------------------------------------------------
# the one-dimensional reduction ring R/(J_{d-1} : I^infinity)


@dataclass(frozen=True)
class ReductionRing:
    """K = J_{d-1} : I^infinity together with sanity verdicts: the quotient
    should be one-dimensional and I should become primary to its maximal
    ideal.  Failures are hypothesis warnings, not fatal."""

    kernel: Ideal
    dim_ok: bool
    primary_ok: bool
    warnings: tuple


def reduction_ring(ideal: Ideal, red: GeneralReduction) -> ReductionRing:
    d = ring_dimension(ideal.ctx)
    if d < 1:
        raise ValueError("reduction ring needs dimension at least one")
    kernel = red.j(d - 1).saturate(ideal)
    dim_ok = kernel.dimension() == 1
    primary_ok = (kernel + ideal).dimension() <= 0
    notes = []
    if not dim_ok:
        notes.append(f"reduction ring has dimension {kernel.dimension()}, expected 1")
    if not primary_ok:
        notes.append("ideal is not primary to the maximal ideal of the reduction ring")
    return ReductionRing(kernel=kernel, dim_ok=dim_ok, primary_ok=primary_ok,
                         warnings=tuple(notes))


def j_zero(ideal: Ideal, red: GeneralReduction,
           policy: TruncationPolicy | None = None) -> LengthValue:
    """Multiplicity of the reduction ring modulo the last general element;
    infinite signals analytic spread below d or a bad sample."""
    d = ring_dimension(ideal.ctx)
    ring = reduction_ring(ideal, red)
    x_last = red.elements[d - 1]
    return loc_quotient_length(ring.kernel + Ideal(ideal.ctx, [x_last]), policy)


def fiber_length_term(ideal: Ideal, j: Ideal, n: int,
                      policy: TruncationPolicy | None = None) -> LengthValue:
    """Length of I^(n+1) / J I^n."""
    return pair_length(ideal ** (n + 1), j * (ideal ** n), policy)


def fiber_length_sum(ideal: Ideal, j: Ideal, cap: int = E1_TERM_CAP,
                     policy: TruncationPolicy | None = None) -> LengthValue:
    """Sum of the lengths of I^(n+1)/J I^n; a zero term ends the sum because
    J I^n = I^(n+1) propagates to every later degree, locally included."""
    total = 0
    for n in range(cap):
        term = fiber_length_term(ideal, j, n, policy)
        if not term.is_finite:
            return term
        if term.value == 0:
            return LengthValue.finite(total)
        total += term.value
    return LengthValue.non_stabilized(
        f"fiber-length terms still nonzero at n = {cap}")


def kernel_corrected_fiber_sum(ideal: Ideal, red: GeneralReduction,
                               cap: int = E1_TERM_CAP,
                               policy: TruncationPolicy | None = None) -> LengthValue:
    """Sum over n of length(I^(n+1)/J I^n) minus the part meeting
    K = J_{d-1} : I^infinity; the difference quotient embeds into the plain
    fiber quotient, so the first zero fiber term ends the sum."""
    d = ring_dimension(ideal.ctx)
    kernel = red.j(d - 1).saturate(ideal)
    j_full = red.full
    total = 0
    for n in range(cap):
        fib = fiber_length_term(ideal, j_full, n, policy)
        if not fib.is_finite:
            return fib
        if fib.value == 0:
            return LengthValue.finite(total)
        meet = pair_length(kernel.intersect(ideal ** (n + 1)),
                           kernel.intersect(j_full * (ideal ** n)), policy)
        if not meet.is_finite:
            return meet
        total += fib.value - meet.value
    return LengthValue.non_stabilized(
        f"kernel-corrected fiber terms still nonzero at n = {cap}")


def e_one_bar(ideal: Ideal, red: GeneralReduction, cap: int = E1_TERM_CAP,
              policy: TruncationPolicy | None = None) -> LengthValue:
    """First Hilbert coefficient of the image of I in the reduction ring,
    computed as the sum of lengths of Ibar^(n+1)/xbar Ibar^n; the sum stops at
    the first zero term, which is final in dimension one."""
    ctx = ideal.ctx
    d = ring_dimension(ctx)
    kernel = reduction_ring(ideal, red).kernel
    x_last = Ideal(ctx, [red.elements[d - 1]])
    total = 0
    for n in range(cap):
        upper = loc_quotient_length(x_last * (ideal ** n) + kernel, policy)
        lower = loc_quotient_length(ideal ** (n + 1) + kernel, policy)
        if not (upper.is_finite and lower.is_finite):
            return upper if not upper.is_finite else lower
        term = upper.value - lower.value
        if term == 0:
            return LengthValue.finite(total)
        total += term
    return LengthValue.non_stabilized(
        f"reduction-ring Hilbert terms still nonzero at n = {cap}")


# --------------------------------------------------------------------------
# intersection-condition check (regular-sequence criterion on partial ideals)


@dataclass(frozen=True)
class ValabregaVallaReport:
    """Bounded-n verdict for the intersection condition
    J_{d-1} ∩ I^(n+1) = J_{d-1} I^n together with the equivalent summation
    condition; the depth conclusion is only reported when the user asserts
    the Artin-Nagata hypothesis."""

    nmax: int
    per_n: tuple               # booleans for n = 0 .. nmax
    sum_value: LengthValue     # sum of fiber lengths
    e1bar: LengthValue
    condition_a: bool | None
    condition_b: bool
    equivalent: bool | None
    depth_verdict: str | None

    def to_json(self):
        return {
            "nmax": self.nmax,
            "intersection_condition_per_n": list(self.per_n),
            "fiber_length_sum": self.sum_value.to_json(),
            "e1_reduction_ring": self.e1bar.to_json(),
            "condition_a": self.condition_a,
            "condition_b": self.condition_b,
            "equivalent": self.equivalent,
            "depth_verdict": self.depth_verdict,
        }


def valabrega_valla_check(ideal: Ideal, red: GeneralReduction, nmax: int,
                          an_asserted: bool = False,
                          policy: TruncationPolicy | None = None) -> ValabregaVallaReport:
    d = ring_dimension(ideal.ctx)
    j_small = red.j(d - 1)
    j_full = red.full
    per_n = tuple(
        local_ideal_equal(j_small.intersect(ideal ** (n + 1)),
                          j_small * (ideal ** n), policy)
        for n in range(nmax + 1))
    total = fiber_length_sum(ideal, j_full, policy=policy)
    e1 = e_one_bar(ideal, red, policy=policy)
    if total.is_finite and e1.is_finite:
        cond_a = total.value == e1.value
        equivalent = cond_a == all(per_n)
    else:
        cond_a = None
        equivalent = None
    cond_b = all(per_n)
    if an_asserted and equivalent:
        holds = "holds" if cond_b else "fails"
        depth = (f"depth of the associated graded ring is >= {d - 1}: {holds} "
                 f"(verified up to n = {nmax})")
    elif an_asserted:
        depth = "conditions disagree; no depth conclusion"
    else:
        depth = None
    return ValabregaVallaReport(nmax=nmax, per_n=per_n, sum_value=total,
                                e1bar=e1, condition_a=cond_a, condition_b=cond_b,
                                equivalent=equivalent, depth_verdict=depth)
