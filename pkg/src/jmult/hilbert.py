"""Generalized Hilbert-Samuel function, polynomial fit, and coefficient
extraction in the signed binomial basis.

The function value at n is the partial sum through i = n of the lengths of
the m-torsion of the graded pieces I^i/I^(i+1).  It eventually agrees with a
polynomial of degree at most d written as

    P(n) = sum_i (-1)^i j_i binom(n + d - i, d - i),

and the coefficients j_0 .. j_d are read off by difference interpolation with
exact integer arithmetic.  No a-priori postulation bound exists, so the fit
looks for a constant d-th difference over a window and then confirms with two
extra points; the detected postulation point is reported so a user can rerun
with a larger window.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ideals import Ideal, ring_dimension
from .lengths import LengthValue, TruncationPolicy, pair_length

FIT_N_CAP = 40


class FitError(RuntimeError):
    """Hilbert values did not become polynomial below the n-cap, or a graded
    piece failed to stabilize; carries the offending trace."""


def binomial(n: int, k: int) -> int:
    """binom(n, k) for any integer n and k >= 0 (zero when k < 0)."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    # generalized: product formula keeps exact integers for negative n
    num = 1
    for t in range(k):
        num *= (n - t)
    for t in range(2, k + 1):
        num //= t
    return num


def forward_difference(values, k: int, at: int = 0) -> int:
    """k-th forward difference at position ``at`` of a value list."""
    return sum((-1) ** (k - t) * comb(k, t) * values[at + t] for t in range(k + 1))


def backward_difference(fn, k: int, n: int) -> int:
    """k-th backward difference of a function of the integers."""
    return sum((-1) ** j * comb(k, j) * fn(n - j) for j in range(k + 1))


def detect_polynomial_window(values, d: int, window: int):
    """Earliest region where the d-th backward difference of ``values`` is
    constant over ``window`` points plus two confirmation points.

    Returns (start, end) indices of the polynomial region (inclusive), or
    None when no such run has appeared yet.
    """
    need = window + 2
    n = len(values)
    run = 0
    prev = None
    for a in range(d, n):
        cur = sum((-1) ** j * comb(d, j) * values[a - j] for j in range(d + 1))
        if prev is not None and cur == prev:
            run += 1
        else:
            run = 1
        prev = cur
        if run >= need:
            return (a - need + 1 - d, a)
    return None


def binomial_basis_convert(values, d: int, start: int = 0):
    """Coefficients (j_0 .. j_d) of the degree-<= d integer polynomial through
    ``values`` at consecutive arguments start, start+1, ...

    Raises FitError when the input does not lie on such a polynomial.
    """
    values = list(values)
    if len(values) < d + 1:
        raise FitError(f"need at least {d + 1} values to fit degree {d}")
    newton = [forward_difference(values, j) for j in range(len(values))]
    if any(newton[j] for j in range(d + 1, len(values))):
        raise FitError("values do not lie on a polynomial of the expected degree")

    def poly(n: int) -> int:
        return sum(newton[j] * binomial(n - start, j) for j in range(min(d + 1, len(newton))))

    cur = [poly(k) for k in range(d + 1)]
    coeffs = []
    for i in range(d + 1):
        c = forward_difference(cur, d - i)
        j_i = (-1) ** i * c
        coeffs.append(j_i)
        for n in range(d + 1):
            cur[n] -= (-1) ** i * j_i * binomial(n + d - i, d - i)
    if any(cur):
        raise FitError("binomial basis conversion left a nonzero remainder")
    return tuple(coeffs)


@dataclass(frozen=True)
class HilbertRecord:
    """Fitted generalized Hilbert-Samuel data for one ideal."""

    dim: int
    values: tuple            # H(0), H(1), ...
    coefficients: tuple      # j_0 .. j_d
    window: tuple            # inclusive polynomial region inside values
    postulation: int

    def polynomial_value(self, n: int) -> int:
        d = self.dim
        return sum((-1) ** i * self.coefficients[i] * binomial(n + d - i, d - i)
                   for i in range(d + 1))

    def h_value(self, n: int) -> int:
        """H(n), with H(n) := 0 for n < 0; beyond the computed table the
        confirmed polynomial continues the function."""
        if n < 0:
            return 0
        if n < len(self.values):
            return self.values[n]
        return self.polynomial_value(n)

    def delta_p_minus_h(self, n: int, k: int | None = None) -> int:
        """Backward difference of P - H, with P evaluated as a polynomial at
        every integer and H vanishing at negative arguments."""
        k = self.dim if k is None else k
        return backward_difference(
            lambda t: self.polynomial_value(t) - self.h_value(t), k, n)

    def sum_route_coefficient(self, i: int) -> int:
        """j_i recovered as sum_{n >= i-1} binom(n, i-1) d^th-difference of
        P - H; the terms vanish past the postulation point."""
        if not 1 <= i <= self.dim:
            raise ValueError("index out of range for the sum route")
        stop = self.postulation + self.dim
        return sum(binomial(n, i - 1) * self.delta_p_minus_h(n)
                   for n in range(i - 1, stop + 1))


def graded_torsion_length(ideal: Ideal, i: int,
                          policy: TruncationPolicy | None = None) -> LengthValue:
    """Length of the m-torsion of I^i / I^(i+1)."""
    ctx = ideal.ctx
    m = Ideal.maximal(ctx)
    high = ideal ** (i + 1)
    low = ideal ** i
    num = high.saturate(m).intersect(low)
    return pair_length(num, high, policy)


def hilbert_function(ideal: Ideal, n: int,
                     policy: TruncationPolicy | None = None) -> LengthValue:
    """Partial sum of graded torsion lengths through i = n."""
    total = LengthValue.finite(0)
    for i in range(n + 1):
        g = graded_torsion_length(ideal, i, policy)
        if not g.is_finite:
            return g
        total = LengthValue.finite(total.value + g.value)
    return total


def fit_hilbert_polynomial(ideal: Ideal, window: int | None = None,
                           n_cap: int = FIT_N_CAP,
                           policy: TruncationPolicy | None = None,
                           extend_to: int = 0) -> HilbertRecord:
    """Compute H until its d-th difference is constant over the window (plus
    two confirmation points), then read off the coefficients.

    ``extend_to`` forces the table of true H values to reach at least that
    index, which the difference-operator consumers upstream rely on.
    """
    ctx = ideal.ctx
    d = ring_dimension(ctx)
    window = window if window is not None else d + 2
    if window < d + 2:
        raise ValueError("window must be at least d + 2")
    values = []
    total = 0
    region = None
    n = 0
    while True:
        g = graded_torsion_length(ideal, n, policy)
        if not g.is_finite:
            raise FitError(f"graded torsion length at degree {n} "
                           f"is {g.to_json()}")
        total += g.value
        values.append(total)
        region = detect_polynomial_window(values, d, window)
        if region is not None and n >= extend_to:
            break
        n += 1
        if n > n_cap:
            raise FitError(f"no polynomial window of size {window} "
                           f"found up to n = {n_cap}")
    s, e = region
    coeffs = binomial_basis_convert(values[s:e + 1], d, start=s)
    record = HilbertRecord(dim=d, values=tuple(values), coefficients=coeffs,
                           window=(s, e), postulation=s)
    for t in range(s, e + 1):
        if record.polynomial_value(t) != values[t]:
            raise FitError("fitted polynomial does not reproduce the window")
    return record
