"""Lengths, mu, order, length tables, Bhattacharya fits, fiber numerators."""

import random

import pytest

from blowup import invariants as inv
from blowup.invariants import (
    NotParameterIdeal,
    StabilizationError,
    bhattacharya_fit,
    bhattacharya_fit_search,
    fiber_hilbert,
    length_table,
    param_multiplicity,
)
from blowup.monomials import NotOriginPrimary

from conftest import H, P, R2, R3, brute_force_outside_count, ex1_ideal, ex2_ideal


def m_pow(ring, n):
    return inv.maximal_ideal_handle(ring).power(n)


def test_length_basics():
    assert inv.length(inv.maximal_ideal_handle(R2)) == 1
    assert inv.length(m_pow(R2, 3)) == 6


def test_length_of_joint_reduction_parameter_ideal_is_local():
    # this parameter ideal vanishes at points away from the origin, so the
    # local colength (9) is what the engine must report
    J = H(R3, "X+Y+Z", "X^2*Z", "Y^3+Z^7")
    assert inv.length(J) == 9


def test_length_rejects_positive_dimensional():
    with pytest.raises(NotOriginPrimary):
        inv.length(H(R2, "X"))


def test_length_rejects_unit_at_origin():
    with pytest.raises(NotOriginPrimary):
        inv.length(H(R2, "X - 1", "Y"))


def test_mu_values():
    _, I1, _ = ex1_ideal(2)
    assert inv.mu(I1) == 11
    for n in (1, 2, 4):
        assert inv.mu(m_pow(R2, n)) == n + 1
    _, I2, _ = ex2_ideal(5)
    assert inv.mu(I2) == 4


def test_mu_equals_minimal_generator_count_on_monomials():
    from blowup.invariants import handle_from_monomial
    from blowup.monomials import MonomialIdeal
    from conftest import random_origin_primary_exponents

    rng = random.Random(64)
    for _ in range(25):
        gens = random_origin_primary_exponents(rng, 2, 6, rng.randint(0, 4))
        M = MonomialIdeal.from_exponents(R2, gens)
        assert inv.mu(handle_from_monomial(M)) == M.num_generators


def test_adic_order():
    for n in (1, 2, 5):
        assert inv.adic_order(m_pow(R2, n)) == n
    _, I2, _ = ex2_ideal(6)
    assert inv.adic_order(I2) == 6
    assert inv.adic_order(H(R2, "X^2", "X*Y", "Y^3")) == 2


def test_length_table_of_maximal_ideal():
    t = length_table(inv.maximal_ideal_handle(R2), 2, 3, 3)
    for r, s, val in t.points():
        total = r + s
        assert val == total * (total + 1) // 2


def test_length_table_matches_brute_force():
    I = H(R2, "X^2", "Y^3")
    t = length_table(I, 3, 3, 3)
    for r, s, val in t.points():
        # generators of m^r I^s, raw: all sums of monomial exponents
        gens = []
        for i in range(r + 1):
            for a, b in ((2 * u, 3 * (s - u)) for u in range(s + 1)):
                gens.append((i + a, (r - i) + b))
        box = (max(g[0] for g in gens) + 1, max(g[1] for g in gens) + 1)
        assert val == brute_force_outside_count(gens, box)


def test_table_monotonicity_guard():
    from blowup.invariants import LengthTable

    with pytest.raises(ValueError):
        LengthTable(1, 1, 2, ((5, 4), (6, 7)))


def test_fit_maximal_ideal():
    form, _ = bhattacharya_fit_search(inv.maximal_ideal_handle(R2))
    assert form.mixed_multiplicities == (1, 1, 1)
    assert form.coefficients[(1, 0)] == -2  # lower coefficients as forced


def test_fit_two_generated_parameter_ideal():
    form, _ = bhattacharya_fit_search(H(R2, "X^2", "Y^3"))
    assert form.mixed(1) == 2
    assert form.mixed(2) == 6
    # e_2 = e(I) = ell(R/I) for the parameter ideal itself
    assert form.mixed(2) == inv.length(H(R2, "X^2", "Y^3"))


def test_fit_family1_top_coefficients():
    _, I1, J1 = ex1_ideal(2)
    form, _ = bhattacharya_fit_search(I1, start=3)
    assert form.mixed(2) == 9
    assert form.mixed(3) == inv.length(J1)  # = e(I), the certified reduction


def test_fit_two_disjoint_windows_agree():
    for I in (H(R2, "X^2", "Y^3"), m_pow(R2, 2), H(R2, "X^2", "X*Y", "Y^3")):
        t1 = length_table(I, 3, 3, 4)
        t2 = length_table(I, 8, 8, 4)
        assert bhattacharya_fit(t1, 2).e == bhattacharya_fit(t2, 2).e


def test_fit_requires_enough_points():
    I = H(R2, "X^2", "Y^3")
    with pytest.raises(ValueError):
        bhattacharya_fit(length_table(I, 3, 3, 2), 2)


def test_fit_reconstructs_table():
    I = H(R2, "X^3", "X*Y", "Y^4")
    form, table = bhattacharya_fit_search(I)
    for r, s, val in table.points():
        assert form.evaluate(r, s) == val


def test_param_multiplicity():
    assert param_multiplicity(H(R2, "X", "Y")) == 1
    assert param_multiplicity(H(R3, "X+Y+Z", "X^2*Z", "Y^3+Z^7")) == 9
    for n in (1, 2, 3):
        assert param_multiplicity(H(R2, "X^%d" % n, "Y^%d" % n)) == n * n
    with pytest.raises(NotParameterIdeal):
        param_multiplicity(m_pow(R2, 2))


def test_fiber_hilbert_family1():
    _, I1, _ = ex1_ideal(2)
    hn = fiber_hilbert(I1, 9)
    assert hn.coefficients == (1, 8)
    assert hn.d == 3


def test_fiber_hilbert_family2():
    _, I2, _ = ex2_ideal(5)
    assert fiber_hilbert(I2, 9).coefficients == (1, 2, 2)
    _, I3, _ = ex2_ideal(4)
    assert fiber_hilbert(I3, 9).coefficients == (1, 2, 1)


def test_fiber_hilbert_m_squared():
    assert fiber_hilbert(m_pow(R2, 2), 8).coefficients == (1, 1)


def test_fiber_hilbert_reconstruction():
    # expanding h(t)/(1-t)^d reproduces the mu sequence
    _, I2, _ = ex2_ideal(6)
    hn = fiber_hilbert(I2, 10)
    h = list(hn.coefficients)
    series = [0] * len(hn.mu_sequence)
    for n in range(len(series)):
        acc = 0
        for k, c in enumerate(h):
            if k <= n:
                # coefficient of t^{n-k} in (1-t)^{-2} is (n-k+1)
                acc += c * (n - k + 1)
        series[n] = acc
    assert tuple(series) == hn.mu_sequence


def test_fiber_hilbert_unstabilized():
    _, I1, _ = ex1_ideal(2)
    with pytest.raises((StabilizationError, ValueError)):
        fiber_hilbert(I1, 5)
