"""Ring declarations, monomial orders, and exact multivariate polynomials.

A ring is a polynomial ring over QQ or GF(p) in named variables, read as the
localization at the ideal of all variables; its Krull dimension is the number
of variables.  Polynomials are immutable maps from exponent vectors (tuples of
machine naturals) to nonzero field coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exact import QQ, FieldTag, GFElement

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# exponents are machine naturals; additions are guarded at entry points
EXPONENT_LIMIT = 2**30


class RingMismatch(ValueError):
    """Operands declared over different rings."""


class ExponentOverflow(OverflowError):
    """An exponent exceeded EXPONENT_LIMIT."""


@dataclass(frozen=True)
class RingSpec:
    """Ordered variable names plus the coefficient-field tag."""

    variables: tuple[str, ...]
    coeff_field: FieldTag = QQ

    def __post_init__(self):
        if not self.variables:
            raise ValueError("need at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not _VAR_RE.match(v):
                raise ValueError("bad variable name %r" % v)

    @property
    def dim(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError("unknown variable %r" % name) from None

    def extend(self, name: str, front: bool = True) -> "RingSpec":
        """New ring with one extra variable (used for elimination)."""
        if name in self.variables:
            raise ValueError("variable %r already present" % name)
        vs = (name,) + self.variables if front else self.variables + (name,)
        return RingSpec(vs, self.coeff_field)

    def __str__(self):
        return "%s[%s]" % (self.coeff_field, ", ".join(self.variables))


class MonomialOrder:
    """Base class; subclasses provide a sort key with a > b iff key(a) > key(b)."""

    def key(self, e: tuple[int, ...]):
        raise NotImplementedError

    def greater(self, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return self.key(a) > self.key(b)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    def key(self, e):
        return e

    def __str__(self):
        return "lex"


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    def key(self, e):
        return (sum(e), tuple(-x for x in reversed(e)))

    def __str__(self):
        return "grevlex"


@dataclass(frozen=True)
class Block(MonomialOrder):
    """Elimination order: grevlex on the first `head` variables, then `inner`."""

    head: int
    inner: MonomialOrder = field(default_factory=GrevLex)

    def key(self, e):
        h = e[: self.head]
        return ((sum(h), tuple(-x for x in reversed(h))), self.inner.key(e[self.head :]))

    def __str__(self):
        return "block(%d, %s)" % (self.head, self.inner)


GREVLEX = GrevLex()
LEX = Lex()

ORDERS_BY_NAME = {"grevlex": GREVLEX, "lex": LEX}


def exp_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Whether x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


class Polynomial:
    """Immutable exact polynomial: dict from exponent tuple to nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_terms(cls, ring: RingSpec, items: Iterable[tuple[tuple[int, ...], object]]) -> "Polynomial":
        acc: dict = {}
        fld = ring.coeff_field
        for e, c in items:
            if len(e) != ring.dim:
                raise ValueError("exponent arity %d != ring dimension %d" % (len(e), ring.dim))
            c = fld.coerce(c)
            cur = acc.get(e)
            c = c if cur is None else cur + c
            if c:
                acc[e] = c
            elif cur is not None:
                del acc[e]
        return cls(ring, acc)

    @classmethod
    def zero(cls, ring: RingSpec) -> "Polynomial":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Polynomial":
        c = ring.coeff_field.coerce(c)
        return cls(ring, {(0,) * ring.dim: c} if c else {})

    @classmethod
    def one(cls, ring: RingSpec) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: RingSpec, name: str) -> "Polynomial":
        i = ring.var_index(name)
        e = tuple(1 if j == i else 0 for j in range(ring.dim))
        return cls(ring, {e: ring.coeff_field.one()})

    @classmethod
    def monomial(cls, ring: RingSpec, exps: tuple[int, ...], coeff=1) -> "Polynomial":
        if len(exps) != ring.dim:
            raise ValueError("exponent arity %d != ring dimension %d" % (len(exps), ring.dim))
        if any(x < 0 for x in exps):
            raise ValueError("negative exponent")
        if any(x > EXPONENT_LIMIT for x in exps):
            raise ExponentOverflow("exponent above %d" % EXPONENT_LIMIT)
        c = ring.coeff_field.coerce(coeff)
        return cls(ring, {tuple(exps): c} if c else {})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        return not any(e) and c == self.ring.coeff_field.one()

    def is_monomial(self) -> bool:
        """Single-term polynomial (any nonzero coefficient)."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    # -- structure ---------------------------------------------------------

    def leading_term(self, order: MonomialOrder) -> tuple[tuple[int, ...], object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_exponent(self, order: MonomialOrder) -> tuple[int, ...]:
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def min_term_degree(self) -> int:
        """Largest k with self in m^k, i.e. the m-adic order of the element."""
        if not self.terms:
            raise ValueError("zero polynomial")
        return min(sum(e) for e in self.terms)

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        if c == self.ring.coeff_field.one():
            return self
        inv = self.ring.coeff_field.one() / c
        return Polynomial(self.ring, {e: v * inv for e, v in self.terms.items()})

    def sort_key(self, order: MonomialOrder):
        """Total deterministic key: term list sorted descending by order."""
        sv = self.ring.coeff_field.sort_value
        return tuple(
            (order.key(e), sv(self.terms[e]))
            for e in sorted(self.terms, key=order.key, reverse=True)
        )

    # -- arithmetic --------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("operands live in %s and %s" % (self.ring, other.ring))
            return other
        if isinstance(other, (int, Fraction, GFElement)):
            return Polynomial.constant(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in other.terms.items():
            cur = acc.get(e)
            c = c if cur is None else cur + c
            if c:
                acc[e] = c
            elif cur is not None:
                del acc[e]
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                cur = acc.get(e)
                c = c if cur is None else cur + c
                if c:
                    acc[e] = c
                elif cur is not None:
                    del acc[e]
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative power")
        if self.terms and n * self.total_degree() > EXPONENT_LIMIT:
            raise ExponentOverflow("power would exceed exponent limit")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def mul_term(self, e: tuple[int, ...], c) -> "Polynomial":
        """Multiply by the single term c * x^e (c nonzero)."""
        return Polynomial(
            self.ring,
            {tuple(x + y for x, y in zip(e, e2)): c * c2 for e2, c2 in self.terms.items()},
        )

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            coerced = self._coerce_other(other)
            if coerced is None:
                return NotImplemented
            other = coerced
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        first = True
        for e in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[e]
            neg = False
            if isinstance(c, Fraction):
                if c < 0:
                    neg, c = True, -c
                cstr = str(c)
            else:  # GFElement: residues print as-is in [0, p)
                cstr = str(c.r)
            factors = [
                name if k == 1 else "%s^%d" % (name, k)
                for name, k in zip(names, e)
                if k
            ]
            if not factors:
                body = cstr
            elif cstr == "1":
                body = "*".join(factors)
            else:
                body = cstr + "*" + "*".join(factors)
            if first:
                parts.append("-" + body if neg else body)
                first = False
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return "<Polynomial %s over %s>" % (self, self.ring)


def maximal_ideal_gens(ring: RingSpec) -> tuple[Polynomial, ...]:
    """Generators of m = (all variables)."""
    return tuple(Polynomial.variable(ring, v) for v in ring.variables)
