"""Ideal-level operator algebra: sum, product, power, intersection, colon,
saturation, equality, membership, dimension and codimension.

Every :class:`Ideal` lives over a :class:`~jmult.ring.RingContext` and
implicitly contains the context relations, so all operations take place in the
quotient ring.  Ideals are immutable; reduced Groebner bases are cached per
monomial order, and the heavier binary operations are memoized on the context
keyed by the operands' canonical reduced bases, which lets the same
mathematical ideal reached along different routes share work.
"""

from __future__ import annotations

import warnings

from .groebner import ComputationLimitError, GroebnerBasis, groebner_basis
from .ring import (GREVLEX, ContextMismatchError, MonomialOrder, Polynomial,
                   RingContext, elimination_order, extend_context, lift_poly,
                   mono_degree, mono_div, mono_divides)

SATURATION_EXPONENT_CAP = 1 << 14


class AlgebraWarning(UserWarning):
    """Flagged conventions, e.g. colon by the zero ideal."""


class InternalInconsistencyError(RuntimeError):
    """An exact division that is guaranteed by theory failed; a bug."""


class Ideal:
    """Finitely generated ideal of the working ring.

    Two ideals are equal exactly when their reduced grevlex bases coincide;
    ``==`` performs that mathematical comparison.
    """

    __slots__ = ("ctx", "gens", "_gb", "_powers", "_key", "_hash")

    def __init__(self, ctx: RingContext, gens=()):
        self.ctx = ctx
        clean = []
        seen = set()
        for g in gens:
            if isinstance(g, dict):
                g = Polynomial(ctx, g)
            if g.ctx != ctx:
                raise ContextMismatchError("generator from a different context")
            if g.is_zero():
                continue
            g = g.monic()
            c = g.canonical()
            if c not in seen:
                seen.add(c)
                clean.append(g)
        self.gens = tuple(_prune_monomial_multiples(clean))
        self._gb = {}
        self._powers = {}
        self._key = None
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ctx: RingContext) -> "Ideal":
        return Ideal(ctx, ())

    @staticmethod
    def unit(ctx: RingContext) -> "Ideal":
        return Ideal(ctx, (ctx.one,))

    @staticmethod
    def maximal(ctx: RingContext) -> "Ideal":
        return Ideal(ctx, tuple(ctx.var(i) for i in range(ctx.nvars)))

    @classmethod
    def _with_gb(cls, ctx: RingContext, gb: GroebnerBasis) -> "Ideal":
        ideal = cls(ctx, gb.polys)
        ideal._gb[gb.order] = gb
        return ideal

    # -- bases and identity ----------------------------------------------------

    def gb(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        got = self._gb.get(order)
        if got is None:
            got = groebner_basis(self.ctx, self.gens, order)
            self._gb[order] = got
        return got

    def key(self):
        if self._key is None:
            self._key = self.gb().cache_key()
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        if self.gens == other.gens:
            return True
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx._sig, self.key()))
        return self._hash

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inner})"

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        """True when every generator vanishes in the working ring."""
        rel = relations_gb(self.ctx)
        return all(rel.contains(g) for g in self.gens)

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def contains(self, f: Polynomial) -> bool:
        return self.gb().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        gb = self.gb()
        return all(gb.contains(g) for g in other.gens)

    def max_gen_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=0)

    # -- generator-level operations ----------------------------------------------

    def _check(self, other: "Ideal"):
        if self.ctx != other.ctx:
            raise ContextMismatchError("ideals from different ring contexts")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ctx, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        if not self.gens or not other.gens:
            return Ideal.zero(self.ctx)
        prods = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ctx, prods)

    def __pow__(self, n: int) -> "Ideal":
        if n < 0:
            raise ValueError("negative ideal power")
        got = self._powers.get(n)
        if got is not None:
            return got
        if n == 0:
            out = Ideal.unit(self.ctx)
        elif n == 1:
            out = self
        else:
            out = (self ** (n - 1)) * self
        self._powers[n] = out
        return out

    def scaled_by(self, f: Polynomial) -> "Ideal":
        """The ideal f * self."""
        if f.is_zero():
            return Ideal.zero(self.ctx)
        return Ideal(self.ctx, tuple(f * g for g in self.gens))

    # -- Groebner-backed operations -------------------------------------------------

    def intersect(self, other: "Ideal") -> "Ideal":
        self._check(other)
        cache = self.ctx._cache
        k = ("intersect",) + tuple(sorted((self.key(), other.key())))
        got = cache.get(k)
        if got is None:
            got = _intersect(self, other)
            cache[k] = got
        return got

    def colon(self, other: "Ideal") -> "Ideal":
        """self : other, the transporter of other into self."""
        self._check(other)
        cache = self.ctx._cache
        k = ("colon", self.key(), other.key())
        got = cache.get(k)
        if got is None:
            got = _colon(self, other)
            cache[k] = got
        return got

    def colon_element(self, f: Polynomial) -> "Ideal":
        cache = self.ctx._cache
        k = ("colon_el", self.key(), f.canonical())
        got = cache.get(k)
        if got is None:
            got = _colon_element(self, f)
            cache[k] = got
        return got

    def saturate(self, other: "Ideal") -> "Ideal":
        """Stable value of the colon chain self : other^n."""
        self._check(other)
        cache = self.ctx._cache
        k = ("saturate", self.key(), other.key())
        got = cache.get(k)
        if got is None:
            got = _saturate(self, other)
            cache[k] = got
        return got

    def dimension(self) -> int:
        """Krull dimension of (ambient)/self; -1 for the unit ideal."""
        return self.gb().dimension()

    def codimension(self) -> int:
        """Height of this ideal in the working ring; the unit ideal gets the
        flagged convention dim R + 1."""
        d = ring_dimension(self.ctx)
        if self.is_unit():
            warnings.warn("codimension of the unit ideal uses the convention dim R + 1",
                          AlgebraWarning, stacklevel=2)
            return d + 1
        return d - self.dimension()


# --------------------------------------------------------------------------
# spec-level operation aliases


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return a + b


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return a * b


def ideal_power(a: Ideal, n: int) -> Ideal:
    return a ** n


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    return a.intersect(b)


def colon_ideal(a: Ideal, b: Ideal) -> Ideal:
    return a.colon(b)


def saturate(a: Ideal, b: Ideal) -> Ideal:
    return a.saturate(b)


def ideal_equals(a: Ideal, b: Ideal) -> bool:
    return a == b


def contains(a: Ideal, f: Polynomial) -> bool:
    return a.contains(f)


def codimension(a: Ideal) -> int:
    return a.codimension()


def krull_dimension(a: Ideal) -> int:
    return a.dimension()


def ring_dimension(ctx: RingContext) -> int:
    """Krull dimension of the working ring itself."""
    got = ctx._cache.get("ring_dim")
    if got is None:
        got = Ideal.zero(ctx).dimension()
        ctx._cache["ring_dim"] = got
    return got


def relations_gb(ctx: RingContext) -> GroebnerBasis:
    """Cached reduced basis of the context relations alone."""
    got = ctx._cache.get("relations_gb")
    if got is None:
        got = Ideal.zero(ctx).gb()
        ctx._cache["relations_gb"] = got
    return got


def standard_monomial_count(a: Ideal):
    """dim_k of (ring)/a when the initial ideal is zero-dimensional, else None."""
    return a.gb().standard_monomial_count()


def eliminate(a: Ideal, drop_names) -> Ideal:
    """Generators of a ∩ k[remaining variables], computed with a block order.

    The result lives in a fresh context on the remaining variables with an
    empty relation list; the image of the original relations is already
    carried by the returned generators.
    """
    ctx = a.ctx
    drop = {ctx.var_index(v) if isinstance(v, str) else v for v in drop_names}
    keep = [i for i in range(ctx.nvars) if i not in drop]
    dropped = [i for i in range(ctx.nvars) if i in drop]
    perm = keep + dropped
    perm_ctx = RingContext(tuple(ctx.var_names[i] for i in perm), ctx.char)

    def permute(f: Polynomial) -> Polynomial:
        return Polynomial(perm_ctx,
                          {tuple(e[i] for i in perm): c for e, c in f.terms.items()})

    gens = [permute(g) for g in a.gens] + [permute(r) for r in ctx.relation_polys()]
    order = elimination_order(len(dropped))
    gb = groebner_basis(perm_ctx, gens, order=order, include_relations=False)
    sub_ctx = RingContext(tuple(ctx.var_names[i] for i in keep), ctx.char)
    kept = []
    for g in gb:
        if not any(g.lead_exp(order)[len(keep):]):
            kept.append(Polynomial(sub_ctx,
                                   {e[:len(keep)]: c for e, c in g.terms.items()}))
    return Ideal(sub_ctx, kept)


# --------------------------------------------------------------------------
# internals


def _prune_monomial_multiples(gens):
    """Drop monomial generators divisible by another monomial generator."""
    monos = [(g.lead_exp(), g) for g in gens if g.is_monomial()]
    out = [g for g in gens if not g.is_monomial()]
    kept = []
    for e, g in sorted(monos, key=lambda t: mono_degree(t[0])):
        if not any(mono_divides(k, e) for k, _ in kept):
            kept.append((e, g))
    out.extend(g for _, g in kept)
    return out


def _aux_context(ctx: RingContext):
    return extend_context(ctx, ("@t",))


def _eliminate_trailing(ext_ctx: RingContext, base_ctx: RingContext, rows,
                        n_aux: int, include_relations: bool) -> Ideal:
    """Groebner-eliminate the trailing n_aux variables and return the result
    as an ideal of the base context, seeding its grevlex basis from the
    restricted block-order basis."""
    order = elimination_order(n_aux)
    gb = groebner_basis(ext_ctx, rows, order=order,
                        include_relations=include_relations)
    nbase = base_ctx.nvars
    kept_rows = []
    for g in gb.polys:
        le = g.lead_exp(order)
        if not any(le[nbase:]):
            kept_rows.append({e[:nbase]: c for e, c in g.terms.items()})
    seeded = GroebnerBasis(base_ctx, GREVLEX,
                           sorted(kept_rows,
                                  key=lambda r: GREVLEX.key(max(r, key=GREVLEX.key)),
                                  reverse=True))
    return Ideal._with_gb(base_ctx, seeded)


def _intersect(a: Ideal, b: Ideal) -> Ideal:
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    ctx = a.ctx
    ext = _aux_context(ctx)
    t = ext.var(ext.nvars - 1)
    one = ext.one
    rows = [t * lift_poly(g, ext) for g in a.gens]
    rows += [(one - t) * lift_poly(g, ext) for g in b.gens]
    # context relations lift into the extended ring and are adjoined whole;
    # they belong to both sides, so the sum is unchanged
    return _eliminate_trailing(ext, ctx, rows, 1, include_relations=True)


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient g/f for g a multiple of f; failure is an internal bug."""
    ctx = g.ctx
    p = ctx.char
    lf = f.lead_exp()
    inv = ctx.field.inv(f.lead_coef())
    work = dict(g.terms)
    quo = {}
    while work:
        e = max(work, key=GREVLEX.key)
        if not mono_divides(lf, e):
            raise InternalInconsistencyError("inexact division in colon computation")
        q = mono_div(e, lf)
        c = work[e] * inv % p
        quo[q] = c
        for fe, fc in f.terms.items():
            ne = tuple(x + y for x, y in zip(fe, q))
            nc = (work.get(ne, 0) - c * fc) % p
            if nc:
                work[ne] = nc
            else:
                work.pop(ne, None)
    return Polynomial(ctx, quo)


def _colon_element(a: Ideal, f: Polynomial) -> Ideal:
    """a : f via (a ∩ (f)) / f, with the intersection taken at ambient level."""
    if f.is_zero():
        warnings.warn("colon by zero yields the unit ideal", AlgebraWarning,
                      stacklevel=2)
        return Ideal.unit(a.ctx)
    if relations_gb(a.ctx).contains(f):
        # f is zero in the working ring, so a : f is everything
        return Ideal.unit(a.ctx)
    if a.is_unit():
        return a
    ctx = a.ctx
    ext = _aux_context(ctx)
    t = ext.var(ext.nvars - 1)
    one = ext.one
    rows = [t * lift_poly(g, ext) for g in a.gens]
    rows += [t * lift_poly(r, ext) for r in ctx.relation_polys()]
    rows.append((one - t) * lift_poly(f, ext))
    meet = _eliminate_trailing(ext, ctx, rows, 1, include_relations=False)
    quots = [_exact_divide(g, f) for g in meet.gens]
    return Ideal(ctx, quots)


def _nonzero_image_gens(b: Ideal):
    rel = relations_gb(b.ctx)
    return [g for g in b.gens if not rel.contains(g)]


def _colon(a: Ideal, b: Ideal) -> Ideal:
    gens = _nonzero_image_gens(b)
    if not gens:
        warnings.warn("colon by the zero ideal yields the unit ideal",
                      AlgebraWarning, stacklevel=2)
        return Ideal.unit(a.ctx)
    out = None
    for f in gens:
        part = a.colon_element(f)
        out = part if out is None else out.intersect(part)
    return out


def _saturate_element(a: Ideal, f: Polynomial) -> Ideal:
    """Stable value of a : f^(2^k), detected by equality of consecutive steps."""
    prev = a
    e = 1
    while e <= SATURATION_EXPONENT_CAP:
        cur = a.colon_element(f ** e)
        if cur == prev:
            return cur
        prev = cur
        e *= 2
    raise ComputationLimitError(
        f"saturation chain did not stabilize below exponent {SATURATION_EXPONENT_CAP}")


def _saturate(a: Ideal, b: Ideal) -> Ideal:
    gens = _nonzero_image_gens(b)
    if not gens:
        return Ideal.unit(a.ctx)
    out = None
    for f in gens:
        part = _saturate_element(a, f)
        out = part if out is None else out.intersect(part)
    return out
