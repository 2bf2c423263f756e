"""Buchberger's algorithm, normal forms and staircase combinatorics.

The engine works on raw term dicts ``{exponent_tuple: residue}`` for speed and
is wrapped by :class:`GroebnerBasis` at the boundary.  Pair selection uses the
normal strategy (smallest lcm in the active order); pairs are discarded by the
product criterion and by the classical chain criterion, both of which are
re-certified in the test suite by brute-force S-pair reduction.

Quotient rings are handled one level up: the ideal layer adjoins the context
relations to every basis computation, so a single code path serves both the
polynomial ring and its quotients.
"""

from __future__ import annotations

import heapq
from itertools import combinations

from .ring import (GREVLEX, MonomialOrder, Polynomial, RingContext,
                   mono_degree, mono_div, mono_divides, mono_lcm, mono_mul)

DEFAULT_PAIR_CAP = 200_000
DEFAULT_TERM_CAP = 100_000


class ComputationLimitError(RuntimeError):
    """A configurable resource cap was exceeded; never a silent truncation."""


# --------------------------------------------------------------------------
# raw engine


def _reduce_raw(f: dict, basis, keyf, p: int, term_cap: int) -> dict:
    """Full normal form of the term dict f against prepared basis rows
    (lead_exp, lead_inv, items). No term of the result is divisible by any
    basis lead."""
    out = {}
    work = dict(f)
    while work:
        e = max(work, key=keyf)
        c = work.pop(e)
        deg_e = mono_degree(e)
        hit = None
        for le, linv, items in basis:
            if mono_degree(le) <= deg_e and mono_divides(le, e):
                hit = (le, linv, items)
                break
        if hit is None:
            out[e] = c
            continue
        le, linv, items = hit
        shift = mono_div(e, le)
        coef = c * linv % p
        for ge, gc in items:
            ne = mono_mul(ge, shift)
            nc = (work.get(ne, 0) - coef * gc) % p
            if nc:
                work[ne] = nc
            else:
                work.pop(ne, None)
        if len(work) > term_cap:
            raise ComputationLimitError(
                f"support exceeded {term_cap} terms during reduction")
    return out


def _prepare(rows, order, p):
    prepped = []
    for g in rows:
        le = max(g, key=order.key)
        linv = pow(g[le], -1, p)
        items = [(e, c) for e, c in g.items() if e != le]
        prepped.append((le, linv, items))
    return prepped


def _spoly(f: dict, g: dict, order, p: int) -> dict:
    lf = max(f, key=order.key)
    lg = max(g, key=order.key)
    l = mono_lcm(lf, lg)
    cf = pow(f[lf], -1, p)
    cg = pow(g[lg], -1, p)
    sf, sg = mono_div(l, lf), mono_div(l, lg)
    out = {}
    for e, c in f.items():
        out[mono_mul(e, sf)] = c * cf % p
    for e, c in g.items():
        ne = mono_mul(e, sg)
        nc = (out.get(ne, 0) - c * cg) % p
        if nc:
            out[ne] = nc
        else:
            out.pop(ne, None)
    return out


def buchberger_raw(gens, nvars: int, p: int, order: MonomialOrder,
                   pair_cap: int = DEFAULT_PAIR_CAP,
                   term_cap: int = DEFAULT_TERM_CAP,
                   assume_gb_prefix: int = 0):
    """Reduced monic Groebner basis of the term dicts in ``gens``.

    ``assume_gb_prefix`` marks an initial segment already known to be a
    Groebner basis, whose internal S-pairs are skipped.  Returns a list of
    term dicts sorted descending by leading monomial; the unit ideal comes
    back as ``[{0-exponent: 1}]`` and the zero ideal as ``[]``.
    """
    keyf = order.key
    basis = []
    for g in gens:
        g = {e: c % p for e, c in g.items() if c % p}
        if g:
            basis.append(g)
    one = (0,) * nvars

    def is_unit(b):
        return any(max(g, key=keyf) == one for g in b)

    if is_unit(basis):
        return [{one: 1}]
    if all(len(g) == 1 for g in basis):
        # a monomial set is its own reduced basis after minimalization
        exps = sorted({next(iter(g)) for g in basis}, key=mono_degree)
        kept = []
        for e in exps:
            if not any(mono_divides(k, e) for k in kept):
                kept.append(e)
        kept.sort(key=keyf, reverse=True)
        return [{e: 1} for e in kept]
    leads = [max(g, key=keyf) for g in basis]

    heap = []
    done = set()
    for i, j in combinations(range(len(basis)), 2):
        if i < assume_gb_prefix and j < assume_gb_prefix:
            done.add((i, j))
            continue
        _push_pair(heap, keyf, leads, i, j)

    prepped = _prepare(basis, order, p)
    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        processed += 1
        if processed > pair_cap:
            raise ComputationLimitError(f"pair count exceeded {pair_cap}")
        li, lj = leads[i], leads[j]
        lcm = mono_lcm(li, lj)
        # product criterion: coprime leads reduce to zero
        if lcm == mono_mul(li, lj):
            continue
        # two monomials have a vanishing S-polynomial
        if len(basis[i]) == 1 and len(basis[j]) == 1:
            continue
        # chain criterion over pairs already considered
        if _chain_skip(leads, done, i, j, lcm):
            continue
        s = _spoly(basis[i], basis[j], order, p)
        r = _reduce_raw(s, prepped, keyf, p, term_cap)
        if not r:
            continue
        if max(r, key=keyf) == one:
            return [{one: 1}]
        t = len(basis)
        basis.append(r)
        leads.append(max(r, key=keyf))
        le = leads[t]
        prepped.append((le, pow(r[le], -1, p), [(e, c) for e, c in r.items() if e != le]))
        for i2 in range(t):
            _push_pair(heap, keyf, leads, i2, t)

    return _interreduce(basis, order, p, term_cap)


def _push_pair(heap, keyf, leads, i, j):
    heapq.heappush(heap, (keyf(mono_lcm(leads[i], leads[j])), i, j))


def _chain_skip(leads, done, i, j, lcm) -> bool:
    for k in range(len(leads)):
        if k in (i, j):
            continue
        if mono_divides(leads[k], lcm):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                return True
    return False


def _interreduce(basis, order, p, term_cap):
    keyf = order.key
    # minimalize: drop rows whose lead is divisible by another lead
    rows = sorted(basis, key=lambda g: keyf(max(g, key=keyf)))
    kept = []
    for g in rows:
        lg = max(g, key=keyf)
        if not any(mono_divides(max(h, key=keyf), lg) for h in kept):
            kept.append(g)
    # tail-reduce each against the others and normalize monic
    out = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        if others:
            g = _reduce_raw(g, _prepare(others, order, p), keyf, p, term_cap)
        if not g:
            continue
        le = max(g, key=keyf)
        inv = pow(g[le], -1, p)
        out.append({e: c * inv % p for e, c in g.items()})
    out.sort(key=lambda g: keyf(max(g, key=keyf)), reverse=True)
    return out


# --------------------------------------------------------------------------
# staircase combinatorics on leading monomials


def count_standard_monomials(leads, nvars: int):
    """Number of monomials outside the monomial ideal generated by ``leads``;
    None when infinite.  Finite exactly when every variable has a pure power
    among the generators."""
    leads = list(leads)
    if any(not any(e) for e in leads):
        return 0
    for i in range(nvars):
        if not any(e[i] and all(x == 0 for j, x in enumerate(e) if j != i)
                   for e in leads):
            return None
    return _count_staircase(leads, nvars)


def _count_staircase(leads, nvars: int) -> int:
    # every variable has a pure power in leads, so each slice stays finite
    if any(not any(e) for e in leads):
        return 0
    if nvars == 1:
        return min(e[0] for e in leads)
    cap = min(e[0] for e in leads if not any(e[1:]))
    total = 0
    for a in range(cap):
        total += _count_staircase([e[1:] for e in leads if e[0] <= a], nvars - 1)
    return total


def monomial_quotient_dimension(leads, nvars: int) -> int:
    """Krull dimension of k[x]/(monomial ideal): the size of the largest
    variable subset meeting no generator's support.  -1 for the unit ideal."""
    if any(not any(e) for e in leads):
        return -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    for size in range(nvars, 0, -1):
        for combo in combinations(range(nvars), size):
            s = set(combo)
            if all(not sup <= s for sup in supports):
                return size
    return 0


# --------------------------------------------------------------------------
# wrapper


class GroebnerBasis:
    """Reduced monic Groebner basis with its context and order.

    Auto-reduced: no leading monomial divides another, every S-polynomial
    reduces to zero (checked by :meth:`certify` in the tests).
    """

    __slots__ = ("ctx", "order", "polys", "leads", "_prepped", "_key")

    def __init__(self, ctx: RingContext, order: MonomialOrder, raw_rows):
        self.ctx = ctx
        self.order = order
        self.polys = tuple(Polynomial(ctx, g) for g in raw_rows)
        self.leads = tuple(max(g, key=order.key) for g in raw_rows)
        self._prepped = _prepare(raw_rows, order, ctx.char) if raw_rows else []
        self._key = None

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        zero = (0,) * self.ctx.nvars
        return any(l == zero for l in self.leads)

    def is_zero(self) -> bool:
        return not self.polys

    def cache_key(self):
        if self._key is None:
            self._key = tuple(p.canonical() for p in self.polys)
        return self._key

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.ctx:
            raise ValueError("polynomial from a different context")
        if not self._prepped:
            return f
        r = _reduce_raw(f.terms, self._prepped, self.order.key, self.ctx.char,
                        DEFAULT_TERM_CAP)
        return Polynomial(self.ctx, r)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def standard_monomial_count(self):
        """dim_k of the quotient by this basis when finite, else None."""
        if self.is_unit():
            return 0
        return count_standard_monomials(self.leads, self.ctx.nvars)

    def dimension(self) -> int:
        """Krull dimension of the quotient (global; -1 for the unit ideal)."""
        if self.is_unit():
            return -1
        return monomial_quotient_dimension(self.leads, self.ctx.nvars)

    def certify(self) -> bool:
        """Brute-force check that every S-pair reduces to zero."""
        p = self.ctx.char
        rows = [g.terms for g in self.polys]
        for f, g in combinations(rows, 2):
            s = _spoly(f, g, self.order, p)
            if s and _reduce_raw(s, self._prepped, self.order.key, p,
                                 DEFAULT_TERM_CAP):
                return False
        return True


def groebner_basis(ctx: RingContext, polys, order: MonomialOrder = GREVLEX,
                   include_relations: bool = True,
                   pair_cap: int = DEFAULT_PAIR_CAP,
                   term_cap: int = DEFAULT_TERM_CAP,
                   assume_gb_prefix: int = 0) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys`` plus, by
    default, the context relations."""
    rows = [f.terms for f in polys if not f.is_zero()]
    if include_relations:
        rows.extend(dict(data) for data in ctx.relations)
    raw = buchberger_raw(rows, ctx.nvars, ctx.char, order,
                         pair_cap=pair_cap, term_cap=term_cap,
                         assume_gb_prefix=assume_gb_prefix)
    return GroebnerBasis(ctx, order, raw)
