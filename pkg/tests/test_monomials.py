"""Monomial ideals: minimalization, staircase lengths, arithmetic, closure."""

import random

import numpy as np
import pytest

from blowup.monomials import (
    MonomialIdeal,
    NotOriginPrimary,
    count_outside,
    maximal_ideal,
    minimalize,
    unit_ideal,
)
from blowup.rings import RingSpec

from conftest import (
    R2,
    R3,
    brute_force_outside_count,
    ex1_ideal,
    ex2_ideal,
    random_origin_primary_exponents,
)


def M(ring, *exps):
    return MonomialIdeal.from_exponents(ring, exps)


def test_minimalize_drops_multiples():
    assert minimalize(R2, [(1, 0), (2, 0), (1, 1)]).generator_tuples() == [(1, 0)]


def test_minimal_generator_count_family1():
    _, I, _ = ex1_ideal(2)
    twin = MonomialIdeal.from_polynomials(R3, I.gens)
    assert twin.num_generators == 11


def test_minimal_generator_count_family2():
    _, I, _ = ex2_ideal(5)
    twin = MonomialIdeal.from_polynomials(R2, I.gens)
    assert twin.num_generators == 4


def test_lengths():
    assert maximal_ideal(R2).length() == 1
    for n in (1, 2, 3, 5):
        assert maximal_ideal(R2).power(n).length() == n * (n + 1) // 2
    assert M(R2, (2, 0), (0, 3)).length() == 6


def test_length_requires_pure_powers():
    with pytest.raises(NotOriginPrimary):
        M(R2, (1, 1)).length()


def test_products_and_powers():
    m = maximal_ideal(R2)
    assert m.power(2).product(m.power(3)) == m.power(5)
    assert M(R2, (1, 0)).product(M(R2, (0, 1))) == M(R2, (1, 1))
    assert unit_ideal(R2).product(m) == m


def test_intersect_and_colon():
    assert M(R2, (1, 0)).intersect(M(R2, (0, 1))) == M(R2, (1, 1))
    assert M(R2, (2, 0), (0, 2)).colon_exponent((1, 0)) == M(R2, (1, 0), (0, 2))
    m = maximal_ideal(R2)
    for n in (2, 3, 4):
        assert m.power(n).colon(M(R2, (1, 0))) == m.power(n - 1)


def test_colon_by_ideal_is_intersection_of_element_colons():
    I = M(R2, (3, 0), (1, 2), (0, 4))
    J = M(R2, (1, 0), (0, 1))
    expected = I.colon_exponent((1, 0)).intersect(I.colon_exponent((0, 1)))
    assert I.colon(J) == expected


def test_mono_colon_matches_hand_values():
    # (mI : X) and (mI : Y) for I = (X^2, XY, Y^3); Y recovers I, X does not
    I = M(R2, (2, 0), (1, 1), (0, 3))
    mI = maximal_ideal(R2).product(I)
    assert mI.colon_exponent((0, 1)) == I
    assert mI.colon_exponent((1, 0)) == M(R2, (2, 0), (1, 1), (0, 2))


def test_newton_closure_adds_hull_points():
    closed = M(R2, (2, 0), (0, 2)).newton_closure()
    assert closed == M(R2, (2, 0), (1, 1), (0, 2))
    assert not M(R2, (2, 0), (0, 2)).is_complete()


def test_powers_of_maximal_ideal_complete():
    for k in (1, 2, 3, 4):
        assert maximal_ideal(R2).power(k).is_complete()


def test_family1_members_complete():
    for s in (2, 3):
        _, I, _ = ex1_ideal(s)
        twin = MonomialIdeal.from_polynomials(R3, I.gens)
        assert twin.is_complete()


def test_family2_not_complete():
    _, I, _ = ex2_ideal(4)
    twin = MonomialIdeal.from_polynomials(R2, I.gens)
    assert not twin.is_complete()


def test_closure_laws_random():
    rng = random.Random(2718)
    for _ in range(25):
        dim = rng.choice([2, 3])
        ring = R2 if dim == 2 else R3
        gens = random_origin_primary_exponents(rng, dim, 5, rng.randint(0, 3))
        I = MonomialIdeal.from_exponents(ring, gens)
        closed = I.newton_closure()
        assert closed.contains(I)
        assert closed.newton_closure() == closed  # idempotent
        # monotone under adding a generator
        bigger = I.sum(MonomialIdeal.from_exponents(ring, [tuple(rng.randint(0, 5) for _ in range(dim))]))
        assert bigger.newton_closure().contains(closed)


def test_count_outside_matches_brute_force():
    rng = random.Random(1618)
    for _ in range(40):
        dim = rng.choice([2, 3])
        ring = R2 if dim == 2 else R3
        gens = random_origin_primary_exponents(rng, dim, 6, rng.randint(0, 4))
        rows = np.asarray(gens, dtype=np.int64)
        box = tuple(int(rows[:, k].max()) + 1 for k in range(dim))
        assert count_outside(rows) == brute_force_outside_count(gens, box)


def test_count_outside_accepts_redundant_rows():
    rows = np.asarray([(2, 0), (0, 3), (2, 1), (5, 5), (2, 0)], dtype=np.int64)
    assert count_outside(rows) == 6


def test_canonical_equality_and_hash():
    a = M(R2, (2, 0), (0, 2), (1, 1))
    b = M(R2, (1, 1), (0, 2), (2, 0), (2, 2))
    assert a == b and hash(a) == hash(b)


def test_origin_primary_detection():
    assert M(R2, (3, 0), (0, 2)).is_origin_primary()
    assert not M(R2, (1, 1), (0, 2)).is_origin_primary()
    assert unit_ideal(R2).is_origin_primary()


def test_four_variable_length():
    R4 = RingSpec(("A", "B", "C", "D"))
    gens = [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)]
    assert MonomialIdeal.from_exponents(R4, gens).length() == 16
    box = MonomialIdeal.from_exponents(R4, gens + [(1, 1, 1, 1)])
    assert box.length() == 15
