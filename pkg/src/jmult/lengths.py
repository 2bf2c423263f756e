"""The universal length primitive: finite local lengths of subquotients A/B
of the working ring, computed by truncation stabilization.

``pair_length(A, B)`` measures the length of A/B supported at the ideal m of
all variables.  It compares Artinian snapshots dim_k R/(B + m^M) and
dim_k R/(A + m^M) for growing M and declares the difference stable once it is
constant across a window of samples; for M large enough the difference equals
the m-local length whenever that length is finite.  Components of A/B
supported away from the origin are invisible to the truncation, which is
exactly the localization the working ring demands; that behaviour is
deliberate and tested.

No a-priori stopping bound is available, so stabilization is a heuristic
backed by the cross-route identity checks higher up the stack: a premature
answer surfaces as a cross-check failure, never silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .groebner import buchberger_raw, count_standard_monomials
from .ideals import Ideal, ring_dimension

DEFAULT_CAP_M = 200
DEFAULT_STEP_M = 2
DEFAULT_WINDOW = 2


class ContainmentError(ValueError):
    """pair_length(A, B) requires B to be contained in A."""


@dataclass(frozen=True)
class LengthValue:
    """A length: an exact integer, an explicit infinite marker, or a
    non-stabilizing marker carrying the truncation trace."""

    kind: str  # "finite" | "infinite" | "non_stabilized"
    value: int | None = None
    reason: str | None = None

    @staticmethod
    def finite(n: int) -> "LengthValue":
        return LengthValue("finite", int(n))

    @staticmethod
    def infinite(reason: str | None = None) -> "LengthValue":
        return LengthValue("infinite", None, reason)

    @staticmethod
    def non_stabilized(reason: str) -> "LengthValue":
        return LengthValue("non_stabilized", None, reason)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def as_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"length is not finite: {self}")
        return self.value

    def to_json(self):
        if self.is_finite:
            return self.value
        if self.kind == "infinite":
            return "infinite"
        return f"non-stabilized: {self.reason}" if self.reason else "non-stabilized"

    def __repr__(self):
        if self.is_finite:
            return f"LengthValue({self.value})"
        return f"LengthValue({self.kind}{':' + self.reason if self.reason else ''})"


def lv_add(a: LengthValue, b: LengthValue) -> LengthValue:
    for x in (a, b):
        if x.kind == "non_stabilized":
            return x
    if a.is_finite and b.is_finite:
        return LengthValue.finite(a.value + b.value)
    return LengthValue.infinite()


def lv_sub(a: LengthValue, b: LengthValue) -> LengthValue:
    for x in (a, b):
        if x.kind == "non_stabilized":
            return x
    if a.is_finite and b.is_finite:
        return LengthValue.finite(a.value - b.value)
    if a.kind == "infinite" and b.is_finite:
        return LengthValue.infinite()
    return LengthValue.non_stabilized("indeterminate difference of lengths")


def lv_sum(items) -> LengthValue:
    total = LengthValue.finite(0)
    for x in items:
        total = lv_add(total, x)
    return total


@dataclass(frozen=True)
class TruncationPolicy:
    """Sampling schedule for the truncation degree M."""

    start_m: int
    step_m: int = DEFAULT_STEP_M
    stability_window: int = DEFAULT_WINDOW
    cap_m: int = DEFAULT_CAP_M

    def __post_init__(self):
        if self.start_m < 1 or self.stability_window < 2 or self.cap_m < self.start_m:
            raise ValueError("invalid truncation policy")

    def samples(self):
        m = self.start_m
        while m <= self.cap_m:
            yield m
            m += self.step_m


def default_policy(*ideals, cap_m: int | None = None) -> TruncationPolicy:
    """startM = 2 (d + max generator degree): past every generator's own scale,
    so stabilization usually happens within the first window.  A context-level
    ``cap_m_override`` (set by the CLI) adjusts the cap without freezing the
    per-call start degree."""
    ctx = ideals[0].ctx
    if cap_m is None:
        cap_m = ctx._cache.get("cap_m_override", DEFAULT_CAP_M)
    d = ring_dimension(ctx)
    deg = max([ctx.max_relation_degree()]
              + [i.max_gen_degree() for i in ideals])
    start = max(1, 2 * (d + deg))
    return TruncationPolicy(start_m=start, cap_m=max(cap_m, start + 4 * DEFAULT_STEP_M))


def degree_monomial_rows(nvars: int, m: int):
    """Term dicts of all monomials of total degree m."""
    rows = []
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        rows.append({tuple(e): 1})
    return rows


def truncated_dim(ideal_: Ideal, m: int) -> int:
    """dim_k of R/(ideal + m^M): the Artinian snapshot, always finite."""
    ctx = ideal_.ctx
    cache = ctx._cache
    key = ("truncdim", ideal_.key(), m)
    got = cache.get(key)
    if got is not None:
        return got
    gb = ideal_.gb()
    if gb.is_unit():
        cache[key] = 0
        return 0
    rows = [g.terms for g in gb.polys]
    prefix = len(rows)
    rows += degree_monomial_rows(ctx.nvars, m)
    raw = buchberger_raw(rows, ctx.nvars, ctx.char, gb.order,
                         assume_gb_prefix=prefix)
    leads = [max(r, key=gb.order.key) for r in raw]
    count = count_standard_monomials(leads, ctx.nvars)
    cache[key] = count
    return count


def pair_length(a: Ideal, b: Ideal, policy: TruncationPolicy | None = None) -> LengthValue:
    """m-local length of A/B for B contained in A (containment is verified)."""
    gb_a = a.gb()
    for g in b.gens:
        if not gb_a.contains(g):
            raise ContainmentError(
                f"generator {g} of the submodule side is not in the larger ideal")
    if policy is None:
        policy = default_policy(a, b)
    cache = a.ctx._cache
    key = ("pairlen", a.key(), b.key(), policy)
    got = cache.get(key)
    if got is not None:
        return got
    trace = []
    result = None
    for m in policy.samples():
        d = truncated_dim(b, m) - truncated_dim(a, m)
        trace.append(d)
        w = policy.stability_window
        if len(trace) >= w and len(set(trace[-w:])) == 1:
            result = LengthValue.finite(d)
            break
    if result is None:
        if all(x <= y for x, y in zip(trace, trace[1:])) and trace[-1] > trace[0]:
            result = LengthValue.infinite(f"D(M) still growing at M={policy.cap_m}")
        else:
            result = LengthValue.non_stabilized(
                f"truncation trace {trace} did not stabilize by M={policy.cap_m}")
    cache[key] = result
    return result


def loc_quotient_length(l: Ideal, policy: TruncationPolicy | None = None) -> LengthValue:
    """m-local length of R/L; infinite when R/L has positive dimension at the
    origin.  Components of R/L supported away from the origin do not count."""
    return pair_length(Ideal.unit(l.ctx), l, policy)


def gamma_length(l: Ideal, policy: TruncationPolicy | None = None) -> LengthValue:
    """Length of the m-torsion submodule of R/L; always finite."""
    sat = l.saturate(Ideal.maximal(l.ctx))
    return pair_length(sat, l, policy)


def standard_monomial_count(l: Ideal) -> LengthValue:
    """dim_k of R/L when the initial ideal is zero-dimensional, else the
    infinite marker."""
    n = l.gb().standard_monomial_count()
    return LengthValue.finite(n) if n is not None else LengthValue.infinite()
