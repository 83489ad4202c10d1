"""Buchberger engine and the general ideal-operation toolkit.

Ideals are handles around generator lists with a per-order cache of reduced
Groebner bases.  The engine uses Gebauer-Moeller pair pruning (subsuming both
classical S-pair criteria) with a degree-ordered pair queue, and a vectorized
divisor search once bases grow.  All outputs are canonically sorted, so equal
ideals produce byte-identical bases.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass

import numpy as np

from .rings import (
    GREVLEX,
    Block,
    MonomialOrder,
    Polynomial,
    RingMismatch,
    RingSpec,
    exp_divides,
    exp_lcm,
    exp_mul,
    exp_sub,
)

_TIME_LIMIT: float | None = None
_DEFAULT_ORDER: MonomialOrder = GREVLEX

# when True, intersect() re-verifies its output by double inclusion
DEBUG_CHECKS = False


class GroebnerTimeout(RuntimeError):
    """A Groebner computation exceeded the configured per-call time limit."""


class NotZeroDimensional(ValueError):
    """Standard monomials requested for an ideal with infinitely many."""


def set_groebner_time_limit(seconds: float | None):
    """Install a per-Groebner-call watchdog (None disables it)."""
    global _TIME_LIMIT
    _TIME_LIMIT = seconds


def set_default_order(order: MonomialOrder):
    """Select the working order for cached bases (results are order-independent)."""
    global _DEFAULT_ORDER
    _DEFAULT_ORDER = order


def default_order() -> MonomialOrder:
    return _DEFAULT_ORDER


class IdealHandle:
    """Generators plus cached reduced Groebner bases keyed by monomial order.

    Immutable apart from the basis cache, whose fills are idempotent; sharing
    a handle across threads is safe (duplicate computation is harmless).
    """

    __slots__ = ("ring", "gens", "_cache")

    def __init__(self, ring: RingSpec, gens):
        gens = [g for g in gens if isinstance(g, Polynomial) and not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator over %s in ideal over %s" % (g.ring, ring))
        if not gens:
            raise ValueError("the zero ideal is not supported")
        seen = {}
        for g in gens:
            seen.setdefault(g, None)
        self.ring = ring
        self.gens = tuple(sorted(seen, key=lambda g: g.sort_key(GREVLEX)))
        self._cache: dict = {}

    @classmethod
    def unit(cls, ring: RingSpec) -> "IdealHandle":
        return cls(ring, [Polynomial.one(ring)])

    def with_cached_basis(self, order: MonomialOrder, basis) -> "IdealHandle":
        """Seed the cache (trusted caller: basis must be the reduced basis)."""
        self._cache[order] = tuple(basis)
        return self

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def _check_ring(self, other: "IdealHandle"):
        if self.ring != other.ring:
            raise RingMismatch("ideals live in %s and %s" % (self.ring, other.ring))

    # -- Groebner ------------------------------------------------------------

    def groebner_basis(self, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        if order is None:
            order = _DEFAULT_ORDER
        basis = self._cache.get(order)
        if basis is None:
            basis = buchberger(list(self.gens), order)
            self._cache[order] = basis
        return basis

    def leading_exponents(self, order: MonomialOrder | None = None) -> list[tuple[int, ...]]:
        if order is None:
            order = _DEFAULT_ORDER
        return [g.leading_exponent(order) for g in self.groebner_basis(order)]

    # -- membership / comparison ----------------------------------------------

    def contains_poly(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatch("element over %s tested in ideal over %s" % (f.ring, self.ring))
        if f.is_zero():
            return True
        return normal_form(f, self.groebner_basis(), _DEFAULT_ORDER).is_zero()

    def contains(self, other: "IdealHandle") -> bool:
        self._check_ring(other)
        return all(self.contains_poly(g) for g in other.gens)

    def equals(self, other: "IdealHandle") -> bool:
        self._check_ring(other)
        return self.groebner_basis() == other.groebner_basis()

    def is_unit(self) -> bool:
        basis = self.groebner_basis()
        return len(basis) == 1 and basis[0].is_one()

    # -- arithmetic -------------------------------------------------------------

    def sum(self, other: "IdealHandle") -> "IdealHandle":
        self._check_ring(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def product(self, other: "IdealHandle") -> "IdealHandle":
        self._check_ring(other)
        return IdealHandle(self.ring, [g * h for g in self.gens for h in other.gens])

    def power(self, k: int) -> "IdealHandle":
        if k < 0:
            raise ValueError("negative ideal power")
        result = IdealHandle.unit(self.ring)
        for _ in range(k):
            result = result.product(self)
        return result

    def scale(self, f: Polynomial) -> "IdealHandle":
        """The ideal f * self."""
        return IdealHandle(self.ring, [f * g for g in self.gens])

    def intersect(self, other: "IdealHandle") -> "IdealHandle":
        self._check_ring(other)
        ring = self.ring
        ring_t = _extended_ring(ring)
        t = Polynomial.variable(ring_t, ring_t.variables[0])
        one = Polynomial.one(ring_t)
        gens_t = [t * _lift(f, ring_t) for f in self.gens]
        gens_t += [(one - t) * _lift(g, ring_t) for g in other.gens]
        basis = buchberger(gens_t, Block(1))
        kept = [g for g in basis if not any(e[0] for e in g.terms)]
        assert kept, "intersection of nonzero ideals in a domain cannot be zero"
        projected = tuple(_project(g, ring) for g in kept)
        result = IdealHandle(ring, projected).with_cached_basis(GREVLEX, projected)
        if DEBUG_CHECKS:
            assert all(self.contains_poly(g) for g in projected), "intersect: not inside left"
            assert all(other.contains_poly(g) for g in projected), "intersect: not inside right"
        return result

    def colon(self, other: "IdealHandle") -> "IdealHandle":
        """(self : other), computed generator by generator via intersections."""
        self._check_ring(other)
        result = None
        for g in other.gens:
            inter = self.intersect(IdealHandle(self.ring, [g]))
            quotients = [divide_exact(h, g) for h in inter.gens]
            piece = IdealHandle(self.ring, quotients)
            result = piece if result is None else result.intersect(piece)
        if result is None:
            raise ValueError("colon by the zero ideal")
        return result

    # -- zero-dimensional structure ----------------------------------------------

    def standard_monomials(self, order: MonomialOrder | None = None) -> "StandardMonomialSet":
        """Monomials outside the leading-term ideal; needs finiteness."""
        lts = self.leading_exponents(order)
        d = self.ring.dim
        for k in range(d):
            if not any(sum(e) == e[k] and e[k] > 0 for e in lts):
                if not any(not any(e) for e in lts):  # unit ideal has LT 1
                    raise NotZeroDimensional(
                        "no pure power of %r in the leading-term ideal" % self.ring.variables[k]
                    )
        if any(not any(e) for e in lts):
            return StandardMonomialSet(self.ring, frozenset())
        seen = {(0,) * d}
        queue = [(0,) * d]
        out = []
        while queue:
            e = queue.pop()
            out.append(e)
            for k in range(d):
                up = e[:k] + (e[k] + 1,) + e[k + 1 :]
                if up in seen:
                    continue
                seen.add(up)
                if not any(exp_divides(lt, up) for lt in lts):
                    queue.append(up)
        return StandardMonomialSet(self.ring, frozenset(out))

    def is_origin_primary(self) -> bool:
        """Finite quotient and vanishing locus only at the origin, both exact."""
        try:
            sm = self.standard_monomials()
        except NotZeroDimensional:
            return False
        L = sm.count
        if L == 0:  # unit ideal: empty quotient is not local at the origin
            return False
        for k in range(self.ring.dim):
            e = tuple(L if j == k else 0 for j in range(self.ring.dim))
            if not self.contains_poly(Polynomial.monomial(self.ring, e)):
                return False
        return True

    def __repr__(self):
        return "IdealHandle(%s)" % ", ".join(str(g) for g in self.gens)


@dataclass(frozen=True)
class StandardMonomialSet:
    """Finite order ideal of exponent vectors outside a leading-term ideal."""

    ring: RingSpec
    exponents: frozenset

    @property
    def count(self) -> int:
        return len(self.exponents)

    def sorted_exponents(self) -> list[tuple[int, ...]]:
        return sorted(self.exponents, key=GREVLEX.key)


# -- division -------------------------------------------------------------------


class _Reducer:
    """Basis prepared for repeated full reduction, with vectorized divisor search."""

    __slots__ = ("key", "entries", "_buf", "_n", "_dim")

    def __init__(self, order: MonomialOrder, dim: int):
        self.key = order.key
        self.entries = []  # (lead_exp, lead_coeff, terms)
        self._dim = dim
        self._buf = np.zeros((64, dim), dtype=np.int64)
        self._n = 0

    def add(self, lexp, lcoeff, terms):
        if self._n == self._buf.shape[0]:
            grown = np.zeros((2 * self._n, self._dim), dtype=np.int64)
            grown[: self._n] = self._buf
            self._buf = grown
        self._buf[self._n] = lexp
        self._n += 1
        self.entries.append((lexp, lcoeff, terms))

    def find_divisor(self, e) -> int:
        n = self._n
        if n <= 24:
            for j in range(n):
                if exp_divides(self.entries[j][0], e):
                    return j
            return -1
        mask = (self._buf[:n] <= np.asarray(e, dtype=np.int64)).all(axis=1)
        j = int(mask.argmax())
        return j if mask[j] else -1

    def reduce_terms(self, h: dict) -> dict:
        """Fully reduce the term dict h in place; returns the remainder dict."""
        key = self.key
        r = {}
        while h:
            e = max(h, key=key)
            c = h.pop(e)
            j = self.find_divisor(e)
            if j < 0:
                r[e] = c
                continue
            lexp, lcoeff, terms = self.entries[j]
            q = exp_sub(e, lexp)
            f = c / lcoeff
            for ge, gc in terms.items():
                if ge == lexp:
                    continue
                ee = exp_mul(ge, q)
                cur = h.get(ee)
                nc = -f * gc if cur is None else cur - f * gc
                if nc:
                    h[ee] = nc
                elif cur is not None:
                    del h[ee]
        return r


def normal_form(f: Polynomial, G, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of f under full multivariate division by the list G.

    No term of the result is divisible by any leading monomial of G, and
    f - result lies in the ideal generated by G.  Reduction prefers the
    earliest divisor in G, so the result is deterministic for a fixed list.
    """
    if isinstance(G, IdealHandle):
        G = G.gens
    G = [g for g in G if not g.is_zero()]
    if f.is_zero() or not G:
        return f
    red = _Reducer(order, f.ring.dim)
    for g in G:
        le, lc = g.leading_term(order)
        red.add(le, lc, g.terms)
    return Polynomial(f.ring, red.reduce_terms(dict(f.terms)))


def divide_exact(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Quotient f / g when g divides f exactly; inexactness is an engine bug."""
    ge, gc = g.leading_term(order)
    h = dict(f.terms)
    q: dict = {}
    key = order.key
    while h:
        e = max(h, key=key)
        c = h.pop(e)
        if not exp_divides(ge, e):
            raise ArithmeticError("inexact division in colon computation; engine bug")
        qe = exp_sub(e, ge)
        qc = c / gc
        q[qe] = q[qe] + qc if qe in q else qc
        if not q[qe]:
            del q[qe]
        for te, tc in g.terms.items():
            if te == ge:
                continue
            ee = exp_mul(te, qe)
            cur = h.get(ee)
            nc = -qc * tc if cur is None else cur - qc * tc
            if nc:
                h[ee] = nc
            elif cur is not None:
                del h[ee]
    return Polynomial(f.ring, q)


# -- Buchberger -------------------------------------------------------------------


def buchberger(gens: list[Polynomial], order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis, deterministic: monic, sorted ascending by order."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ()
    ring = gens[0].ring
    deadline = None if _TIME_LIMIT is None else time.monotonic() + _TIME_LIMIT

    red = _Reducer(order, ring.dim)
    key = order.key
    pairs: list = []  # heap of (deg, key(lcm), i, j, lcm)
    live_lcm: dict = {}

    def add_element(p: Polynomial):
        le, lc = p.leading_term(order)
        t = len(red.entries)
        # Gebauer-Moeller: prune scheduled pairs covered by the new leading term
        for ij in list(live_lcm):
            L = live_lcm[ij]
            i, j = ij
            if (
                exp_divides(le, L)
                and exp_lcm(red.entries[i][0], le) != L
                and exp_lcm(red.entries[j][0], le) != L
            ):
                del live_lcm[ij]
        # group candidate pairs by lcm, keep minimal lcms, apply product criterion
        cands: dict = {}
        for i in range(t):
            L = exp_lcm(red.entries[i][0], le)
            cands.setdefault(L, []).append(i)
        kept_lcms: list = []
        for L in sorted(cands, key=lambda L: (sum(L), key(L))):
            if any(exp_divides(K, L) and K != L for K in kept_lcms):
                continue
            kept_lcms.append(L)
            members = cands[L]
            if any(L == exp_mul(red.entries[i][0], le) for i in members):
                continue  # coprime leading terms: S-pair reduces to zero
            i = min(members)
            live_lcm[(i, t)] = L
            heapq.heappush(pairs, (sum(L), key(L), i, t, L))
        red.add(le, lc, p.terms)

    for g in sorted(gens, key=lambda g: g.sort_key(order)):
        h = red.reduce_terms(dict(g.terms))
        if h:
            hp = Polynomial(ring, h).monic(order)
            add_element(hp)

    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout("Groebner call exceeded %.1f s" % _TIME_LIMIT)
        _, _, i, j, L = heapq.heappop(pairs)
        if live_lcm.get((i, j)) != L:
            continue
        del live_lcm[(i, j)]
        ei, ci, ti = red.entries[i]
        ej, cj, tj = red.entries[j]
        qi, qj = exp_sub(L, ei), exp_sub(L, ej)
        s: dict = {}
        for e, c in ti.items():
            ee = exp_mul(e, qi)
            s[ee] = c / ci
        for e, c in tj.items():
            ee = exp_mul(e, qj)
            cur = s.get(ee)
            nc = -(c / cj) if cur is None else cur - c / cj
            if nc:
                s[ee] = nc
            elif cur is not None:
                del s[ee]
        h = red.reduce_terms(s)
        if h:
            add_element(Polynomial(ring, h).monic(order))

    # minimal basis: leading exponents form an antichain
    entries = red.entries
    order_idx = sorted(range(len(entries)), key=lambda k: key(entries[k][0]))
    kept: list[int] = []
    for k in order_idx:
        lk = entries[k][0]
        if not any(exp_divides(entries[m][0], lk) for m in kept):
            kept.append(k)

    final = _Reducer(order, ring.dim)
    for k in kept:
        final.add(*entries[k])
    out = []
    for k in kept:
        le, lc, terms = entries[k]
        tail = {e: c / lc for e, c in terms.items() if e != le}
        reduced_tail = final.reduce_terms(tail)
        reduced_tail[le] = ring.coeff_field.one()
        out.append(Polynomial(ring, reduced_tail))
    out.sort(key=lambda g: key(g.leading_exponent(order)))
    return tuple(out)


# -- elimination helpers --------------------------------------------------------


def _extended_ring(ring: RingSpec) -> RingSpec:
    name = "t0"
    while name in ring.variables:
        name += "_"
    return ring.extend(name, front=True)


def _lift(p: Polynomial, ring_t: RingSpec) -> Polynomial:
    return Polynomial(ring_t, {(0,) + e: c for e, c in p.terms.items()})


def _project(p: Polynomial, ring: RingSpec) -> Polynomial:
    assert not any(e[0] for e in p.terms)
    return Polynomial(ring, {e[1:]: c for e, c in p.terms.items()})


# -- spec-level operation names ---------------------------------------------------


def groebner_basis(I: IdealHandle, order: MonomialOrder | None = None):
    return I.groebner_basis(order)


def membership(f: Polynomial, I: IdealHandle) -> bool:
    return I.contains_poly(f)


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return I.sum(J)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return I.product(J)


def ideal_power(I: IdealHandle, k: int) -> IdealHandle:
    return I.power(k)


def intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return I.intersect(J)


def colon(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return I.colon(J)


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    return I.equals(J)


def ideal_contains(I: IdealHandle, J: IdealHandle) -> bool:
    return I.contains(J)


def standard_monomials(I: IdealHandle) -> StandardMonomialSet:
    return I.standard_monomials()


def is_origin_primary(I: IdealHandle) -> bool:
    return I.is_origin_primary()
