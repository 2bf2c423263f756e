"""Line-oriented problem language: a ring declaration, optional quotient
relations, and the ideal under study.

    ring char=32003 vars=x,y
    mod x^3-x^2*y
    ideal x*y^2

Polynomials are signed sums of products of powers and integer literals with
an explicit ``*`` between factors; ``#`` starts a comment.  Syntax errors and
semantic errors (unknown variable, non-prime characteristic, empty ideal) are
reported with line and column, as distinct error types.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideals import Ideal
from .ring import Polynomial, RingContext, format_polynomial, is_prime


class ProblemError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class ProblemSyntaxError(ProblemError):
    pass


class ProblemSemanticError(ProblemError):
    pass


@dataclass(frozen=True)
class Options:
    """Run configuration shared by the CLI and the report pipeline."""

    seed: int = 0
    char: int | None = None
    nmax: int | None = None
    cap_m: int = 200
    window: int | None = None
    gd_asserted: bool = False
    an_asserted: bool = False
    s2_asserted: bool = False
    omega_colon: str = "x1"
    fmt: str = "json"
    oracle: bool = False


@dataclass(frozen=True)
class ProblemSpec:
    ring: RingContext
    ideal: Ideal
    options: Options = field(default_factory=Options)

    def __eq__(self, other):
        return (isinstance(other, ProblemSpec) and self.ring == other.ring
                and self.ideal == other.ideal)


# --------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class Token:
    kind: str      # IDENT | INT | SYM | END
    text: str
    line: int
    col: int


_SYMBOLS = set("+-*^=,")


def _tokenize_line(text: str, line_no: int):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "#":
            break
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line_no, col))
            i = j
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line_no, col))
            i = j
        elif c in _SYMBOLS:
            tokens.append(Token("SYM", c, line_no, col))
            i += 1
        else:
            raise ProblemSyntaxError(f"unexpected character {c!r}", line_no, col)
    return tokens


class _Cursor:
    def __init__(self, tokens, line_no: int, line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.line = line_no
        self.end_col = line_len + 1

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is not None:
            self.pos += 1
        return t

    def expect_sym(self, sym: str):
        t = self.next()
        if t is None or t.kind != "SYM" or t.text != sym:
            where = t or Token("END", "", self.line, self.end_col)
            raise ProblemSyntaxError(f"expected {sym!r}", where.line, where.col)
        return t

    def expect_ident(self, what="identifier"):
        t = self.next()
        if t is None or t.kind != "IDENT":
            where = t or Token("END", "", self.line, self.end_col)
            raise ProblemSyntaxError(f"expected {what}", where.line, where.col)
        return t

    def expect_int(self, what="integer"):
        t = self.next()
        if t is None or t.kind != "INT":
            where = t or Token("END", "", self.line, self.end_col)
            raise ProblemSyntaxError(f"expected {what}", where.line, where.col)
        return t

    def expect_end(self):
        t = self.peek()
        if t is not None:
            raise ProblemSyntaxError(f"unexpected {t.text!r}", t.line, t.col)


# --------------------------------------------------------------------------
# polynomial expressions


def _parse_factor(cur: _Cursor, ctx: RingContext) -> Polynomial:
    t = cur.next()
    if t is None:
        raise ProblemSyntaxError("expected a factor", cur.line, cur.end_col)
    if t.kind == "INT":
        return ctx.constant(int(t.text))
    if t.kind == "IDENT":
        try:
            idx = ctx.var_index(t.text)
        except KeyError:
            raise ProblemSemanticError(f"unknown variable {t.text!r}",
                                       t.line, t.col) from None
        exp = 1
        nxt = cur.peek()
        if nxt is not None and nxt.kind == "SYM" and nxt.text == "^":
            cur.next()
            exp = int(cur.expect_int("exponent").text)
        e = [0] * ctx.nvars
        e[idx] = exp
        return ctx.monomial(e)
    raise ProblemSyntaxError(f"unexpected {t.text!r} in polynomial", t.line, t.col)


def _parse_term(cur: _Cursor, ctx: RingContext) -> Polynomial:
    out = _parse_factor(cur, ctx)
    while True:
        t = cur.peek()
        if t is not None and t.kind == "SYM" and t.text == "*":
            cur.next()
            out = out * _parse_factor(cur, ctx)
        else:
            return out


def parse_poly(cur: _Cursor, ctx: RingContext) -> Polynomial:
    sign = 1
    t = cur.peek()
    if t is not None and t.kind == "SYM" and t.text in "+-":
        cur.next()
        sign = -1 if t.text == "-" else 1
    out = _parse_term(cur, ctx)
    if sign < 0:
        out = -out
    while True:
        t = cur.peek()
        if t is not None and t.kind == "SYM" and t.text in "+-":
            cur.next()
            nxt = _parse_term(cur, ctx)
            out = out - nxt if t.text == "-" else out + nxt
        else:
            return out


def _parse_poly_list(cur: _Cursor, ctx: RingContext):
    polys = [parse_poly(cur, ctx)]
    while True:
        t = cur.peek()
        if t is not None and t.kind == "SYM" and t.text == ",":
            cur.next()
            polys.append(parse_poly(cur, ctx))
        else:
            cur.expect_end()
            return polys


# --------------------------------------------------------------------------
# the problem grammar


def parse_problem(text: str, options: Options | None = None) -> ProblemSpec:
    options = options or Options()
    lines = []
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize_line(raw, no)
        if toks:
            lines.append((no, len(raw), toks))
    if not lines:
        raise ProblemSyntaxError("empty problem: expected a ring line", 1, 1)

    def head(tokens):
        return tokens[0].text if tokens[0].kind == "IDENT" else None

    no, ln, toks = lines[0]
    if head(toks) != "ring":
        raise ProblemSyntaxError("expected ring line first", no, toks[0].col)
    cur = _Cursor(toks[1:], no, ln)
    kw = cur.expect_ident("'char'")
    if kw.text != "char":
        raise ProblemSyntaxError("expected 'char'", kw.line, kw.col)
    cur.expect_sym("=")
    char_tok = cur.expect_int("characteristic")
    char = options.char if options.char is not None else int(char_tok.text)
    if not is_prime(char) or char == 2:
        raise ProblemSemanticError(f"characteristic {char} is not an odd prime",
                                   char_tok.line, char_tok.col)
    kw = cur.expect_ident("'vars'")
    if kw.text != "vars":
        raise ProblemSyntaxError("expected 'vars'", kw.line, kw.col)
    cur.expect_sym("=")
    names = [cur.expect_ident("variable name").text]
    while True:
        t = cur.peek()
        if t is not None and t.kind == "SYM" and t.text == ",":
            cur.next()
            names.append(cur.expect_ident("variable name").text)
        else:
            cur.expect_end()
            break
    if len(set(names)) != len(names):
        raise ProblemSemanticError("duplicate variable name", no, toks[0].col)
    base_ctx = RingContext(tuple(names), char)

    rest = lines[1:]
    relations = []
    if rest and head(rest[0][2]) == "mod":
        no, ln, toks = rest[0]
        cur = _Cursor(toks[1:], no, ln)
        relations = _parse_poly_list(cur, base_ctx)
        rest = rest[1:]

    if not rest:
        raise ProblemSyntaxError("expected an ideal line", no, 1)
    no, ln, toks = rest[0]
    if head(toks) != "ideal":
        raise ProblemSyntaxError(f"expected 'ideal', got {toks[0].text!r}",
                                 no, toks[0].col)
    ctx = RingContext(tuple(names), char, relations)
    cur = _Cursor(toks[1:], no, ln)
    if cur.peek() is None:
        raise ProblemSyntaxError("empty ideal", no, ln + 1)
    gens = _parse_poly_list(cur, ctx)
    if rest[1:]:
        extra = rest[1][2][0]
        raise ProblemSyntaxError(f"unexpected line starting with {extra.text!r}",
                                 extra.line, extra.col)
    return ProblemSpec(ring=ctx, ideal=Ideal(ctx, gens), options=options)


def print_problem(spec: ProblemSpec) -> str:
    """Canonical text form; parsing it back yields an equal problem."""
    ctx = spec.ring
    out = [f"ring char={ctx.char} vars={','.join(ctx.var_names)}"]
    rels = ctx.relation_polys()
    if rels:
        out.append("mod " + ",".join(format_polynomial(r) for r in rels))
    gens = spec.ideal.gens or (ctx.zero,)
    out.append("ideal " + ",".join(format_polynomial(g) for g in gens))
    return "\n".join(out) + "\n"
