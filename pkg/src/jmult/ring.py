"""Exact arithmetic layer: prime-field scalars, exponent-vector monomials,
monomial orders and sparse multivariate polynomials.

Everything here is immutable after construction and all operations are pure
functions, so values can be shared freely between threads.  Coefficients are
plain integer residues in ``[0, p)``; the modulus is restricted below 2**31 so
that intermediate products fit comfortably in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

DEFAULT_CHAR = 32003
MAX_CHAR = 1 << 31

Exponents = tuple  # tuple[int, ...], one slot per ambient variable


class ContextMismatchError(ValueError):
    """Operands built over different ring contexts."""


# --------------------------------------------------------------------------
# prime field

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every modulus we accept."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Residue arithmetic mod an odd prime p < 2**31."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not (2 < p < MAX_CHAR):
            raise ValueError(f"characteristic must be an odd prime below 2^31, got {p}")
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p

    def norm(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero residue")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


# --------------------------------------------------------------------------
# monomials (bare exponent tuples) and orders


def mono_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponents, b: Exponents) -> bool:
    """True when the monomial with exponents a divides the one with b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Exponents) -> int:
    return sum(a)


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on monomials.

    kind is one of ``grevlex``, ``lex`` or ``block``.  A block order compares
    the trailing ``elim_last`` coordinates first (grevlex within each block);
    it is the elimination order used to drop auxiliary variables, which are
    always appended at the end of the variable list.
    """

    kind: str = "grevlex"
    elim_last: int = 0

    def key(self, e: Exponents):
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return e
        k = len(e) - self.elim_last
        return (_grevlex_key(e[k:]), _grevlex_key(e[:k]))

    def compare(self, a: Exponents, b: Exponents) -> int:
        if len(a) != len(b):
            raise ValueError("exponent vectors of different lengths")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def _grevlex_key(e: Exponents):
    return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(n_last: int) -> MonomialOrder:
    return MonomialOrder("block", n_last)


# --------------------------------------------------------------------------
# ring context


class RingContext:
    """Ambient data shared by every algebraic value: variable names, the odd
    prime characteristic, and the quotient relations defining the working
    ring.

    The ring under study is k[vars]/(relations) localized at the ideal
    generated by all the variables; ideals built over this context implicitly
    contain the relations.  Relations are kept as canonical term data so that
    contexts compare and hash by value.
    """

    __slots__ = ("var_names", "char", "field", "relations", "_sig", "_cache")

    def __init__(self, var_names: Iterable[str], char: int = DEFAULT_CHAR,
                 relations: Iterable = ()):
        names = tuple(var_names)
        if len(set(names)) != len(names) or not names:
            raise ValueError("variable names must be nonempty and distinct")
        self.var_names = names
        self.field = PrimeField(char)
        self.char = char
        rel = []
        for r in relations:
            terms = r.terms if isinstance(r, Polynomial) else dict(r)
            data = tuple(sorted((tuple(e), c % char) for e, c in terms.items() if c % char))
            if data:
                rel.append(data)
        self.relations = tuple(rel)
        self._sig = (self.var_names, self.char, self.relations)
        self._cache = {}

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def __eq__(self, other):
        return isinstance(other, RingContext) and self._sig == other._sig

    def __hash__(self):
        return hash(self._sig)

    def __repr__(self):
        rel = f", {len(self.relations)} relations" if self.relations else ""
        return f"RingContext(vars={','.join(self.var_names)}, char={self.char}{rel})"

    # -- constructors ------------------------------------------------------

    def polynomial(self, terms: Mapping) -> "Polynomial":
        return Polynomial(self, terms)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.var_index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def var_index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def monomial(self, exps: Iterable[int], coef: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coef})

    def relation_polys(self) -> list:
        return [Polynomial(self, dict(data)) for data in self.relations]

    def max_relation_degree(self) -> int:
        degs = [max(mono_degree(e) for e, _ in data) for data in self.relations]
        return max(degs, default=0)


class Polynomial:
    """Sparse multivariate polynomial over the context's prime field.

    Terms are a mapping from exponent tuples to nonzero residues; the zero
    polynomial has no terms.  Instances are immutable and hashable.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping):
        p = ctx.char
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                e = tuple(e)
                if len(e) != ctx.nvars:
                    raise ValueError("exponent vector length does not match context")
                clean[e] = c
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono_degree(e) == 0 for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(e) for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError("polynomials from different ring contexts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ctx.char
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = (out.get(e, 0) + c) % p
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out)

    def __neg__(self) -> "Polynomial":
        p = self.ctx.char
        return Polynomial(self.ctx, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ctx.char
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                nc = (out.get(e, 0) + c1 * c2) % p
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return Polynomial(self.ctx, out)

    def scale(self, c: int) -> "Polynomial":
        p = self.ctx.char
        c %= p
        return Polynomial(self.ctx, {e: c * v % p for e, v in self.terms.items()})

    def mul_term(self, exps: Exponents, coef: int = 1) -> "Polynomial":
        p = self.ctx.char
        return Polynomial(self.ctx, {mono_mul(e, exps): c * coef % p
                                     for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- order-dependent views ----------------------------------------------

    def lead_exp(self, order: MonomialOrder = GREVLEX) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def lead_coef(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.lead_exp(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ctx.field.inv(self.lead_coef(order)))

    # -- structural helpers --------------------------------------------------

    def substitute_zero(self, positions) -> "Polynomial":
        """Set the listed variables to zero, dropping every term that uses them."""
        pos = set(positions)
        out = {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in pos)}
        return Polynomial(self.ctx, out)

    def canonical(self):
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ctx._sig == other.ctx._sig
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx._sig, self.canonical()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(f: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text form: grevlex-descending terms, explicit * and ^,
    coefficients balanced around zero so -1 prints as a minus sign."""
    if f.is_zero():
        return "0"
    p = f.ctx.char
    names = f.ctx.var_names
    parts = []
    for e, c in f.sorted_terms(order):
        if c > p // 2:
            sign, mag = "-", p - c
        else:
            sign, mag = "+", c
        factors = [f"{names[i]}^{x}" if x > 1 else names[i]
                   for i, x in enumerate(e) if x]
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if sign == "+" else "-" + term)
        else:
            parts.append(f"{sign}{term}")
    return "".join(parts)


# --------------------------------------------------------------------------
# ring extension and projection (auxiliary variables go at the end)


def extend_context(ctx: RingContext, extra_names: Iterable[str]) -> RingContext:
    extras = tuple(extra_names)
    pad = (0,) * len(extras)
    lifted = [{e + pad: c for e, c in dict(data).items()} for data in ctx.relations]
    return RingContext(ctx.var_names + extras, ctx.char, lifted)


def lift_poly(f: Polynomial, big: RingContext) -> Polynomial:
    pad = (0,) * (big.nvars - f.ctx.nvars)
    return Polynomial(big, {e + pad: c for e, c in f.terms.items()})


def project_poly(f: Polynomial, small: RingContext) -> Polynomial:
    """Drop trailing coordinates, which must all be zero in every term."""
    k = small.nvars
    out = {}
    for e, c in f.terms.items():
        if any(e[k:]):
            raise ValueError("polynomial mentions an auxiliary variable")
        out[e[:k]] = c
    return Polynomial(small, out)
