"""Recursive-descent parser for polynomial expressions.

Grammar (version 1):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ('^' NAT)?
    atom    := NAT | RAT | VAR | '(' expr ')'
    NAT     := [0-9]+
    RAT     := [0-9]+ '/' [0-9]+          (single literal token, no spaces)
    VAR     := [A-Za-z][A-Za-z0-9_]*

Juxtaposition is not multiplication ("2X" is a syntax error).  Unary minus
binds tighter than '+' and looser than '^', so "-X^2" is -(X^2).  The RAT
literal exists so that printing a polynomial with fractional coefficients and
re-parsing it is the identity; every grammar-v1 input parses unchanged.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Polynomial, RingSpec

MAX_EXPONENT = 10**6


class ParseError(ValueError):
    """Syntax or semantic error, carrying the 0-based offset into the text."""

    def __init__(self, message: str, position: int):
        super().__init__("%s (at offset %d)" % (message, position))
        self.position = position


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(("rat", text[i:j] + "/" + text[j + 1 : k], i))
                i = k
            else:
                tokens.append(("nat", text[i:j], i))
                i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, tok[1] or "end of input"), tok[2])
        return self.advance()

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected %r" % tok[1], tok[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        if self.peek()[0] == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("nat")
            exponent = int(tok[1])
            if exponent > MAX_EXPONENT:
                raise ParseError("exponent %d exceeds limit %d" % (exponent, MAX_EXPONENT), tok[2])
            return base**exponent
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        kind = tok[0]
        if kind == "nat":
            self.advance()
            return Polynomial.constant(self.ring, int(tok[1]))
        if kind == "rat":
            self.advance()
            num, den = tok[1].split("/")
            if int(den) == 0:
                raise ParseError("zero denominator", tok[2])
            return Polynomial.constant(self.ring, Fraction(int(num), int(den)))
        if kind == "name":
            self.advance()
            try:
                return Polynomial.variable(self.ring, tok[1])
            except KeyError:
                raise ParseError("unknown variable %r" % tok[1], tok[2]) from None
        if kind == "(":
            self.advance()
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError("expected a value, found %r" % (tok[1] or "end of input"), tok[2])


def parse_poly(text: str, ring: RingSpec) -> Polynomial:
    """Parse an expression into canonical form; parse(print(parse(t))) == parse(t)."""
    return _Parser(text, ring).parse()


def split_poly_list(text: str) -> list[str]:
    """Split a comma-separated generator list, respecting parentheses."""
    parts = []
    depth = 0
    cur = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", i)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError("unbalanced '('", len(text))
    parts.append("".join(cur))
    return [p.strip() for p in parts]
