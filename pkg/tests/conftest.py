"""Shared helpers: deterministic random generators and brute-force oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct

from blowup.ideals import IdealHandle
from blowup.parse import parse_poly
from blowup.rings import Polynomial, RingSpec

R2 = RingSpec(("X", "Y"))
R3 = RingSpec(("X", "Y", "Z"))


def H(ring, *texts) -> IdealHandle:
    return IdealHandle(ring, [parse_poly(t, ring) for t in texts])


def P(ring, text) -> Polynomial:
    return parse_poly(text, ring)


def ex1_ideal(s: int):
    from blowup.families import member

    m = member("ex1", s)
    ring = RingSpec(m.variables)
    return ring, H(ring, *m.ideal_gens), H(ring, *m.reduction_gens)


def ex2_ideal(n: int):
    from blowup.families import member

    m = member("ex2", n)
    ring = RingSpec(m.variables)
    return ring, H(ring, *m.ideal_gens), H(ring, *m.reduction_gens)


def random_origin_primary_exponents(rng: random.Random, dim: int, max_deg: int, extra: int):
    """Pure power on every axis plus `extra` random exponent vectors."""
    gens = []
    for k in range(dim):
        e = [0] * dim
        e[k] = rng.randint(1, max_deg)
        gens.append(tuple(e))
    for _ in range(extra):
        gens.append(tuple(rng.randint(0, max_deg) for _ in range(dim)))
    return [g for g in gens if any(g)]


def random_polynomial(rng: random.Random, ring: RingSpec, terms: int, max_deg: int, max_coeff: int):
    items = []
    for _ in range(terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(ring.dim))
        c = rng.randint(-max_coeff, max_coeff)
        items.append((e, c))
    return Polynomial.from_terms(ring, items)


def brute_force_outside_count(gens, box) -> int:
    """Lattice points in the box not divisible by any generator; independent of
    the staircase recursion (plain loops)."""
    count = 0
    for pt in iproduct(*(range(b) for b in box)):
        if not any(all(g[i] <= pt[i] for i in range(len(box))) for g in gens):
            count += 1
    return count


def grid_rationals(max_den: int, lo: Fraction, hi: Fraction):
    """All fractions with denominator <= max_den inside [lo, hi]."""
    seen = set()
    for q in range(1, max_den + 1):
        p0 = int(lo * q) - 1
        p1 = int(hi * q) + 1
        for p in range(p0, p1 + 1):
            x = Fraction(p, q)
            if lo <= x <= hi:
                seen.add(x)
    return sorted(seen)
