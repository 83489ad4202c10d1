"""Numerical invariants of origin-primary ideals: lengths, minimal generator
counts, m-adic order, the bigraded length table with its exact binomial-basis
fit, mixed multiplicities, parameter multiplicities, and fiber-cone Hilbert
numerators.

Length-type operations dispatch to the monomial staircase fast path whenever
every generator is a monomial; otherwise they run through Groebner standard
monomials.  Both paths are exact and agree (tested as an oracle pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .exact import ExactMatrix, solve_exact_linear
from .ideals import IdealHandle, NotZeroDimensional, default_order
from .monomials import (
    MonomialIdeal,
    NotOriginPrimary,
    count_outside,
    maximal_ideal,
    _pairwise_sum,
)
from .rings import Polynomial, RingSpec, maximal_ideal_gens


class FitError(ValueError):
    """Exact interpolation failed to validate: the window is outside the
    polynomial regime.  Carries held-out residuals when available."""

    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = tuple(residuals)


class StabilizationError(ValueError):
    """The fiber-cone generator counts have not stabilized; advise a larger N."""


class NotParameterIdeal(ValueError):
    """Parameter multiplicity requested for an ideal with mu != dim."""


# -- routing -----------------------------------------------------------------


def monomial_twin(I: IdealHandle) -> MonomialIdeal | None:
    """Monomial-module view of a handle whose generators are all monomials."""
    if not I.is_monomial():
        return None
    return MonomialIdeal.from_polynomials(I.ring, I.gens)


def handle_from_monomial(M: MonomialIdeal) -> IdealHandle:
    """Handle over the same generators; minimal monomial generators are already
    the reduced Groebner basis for every order, so the cache is pre-seeded."""
    handle = IdealHandle(M.ring, M.to_polynomials())
    order = default_order()
    basis = tuple(sorted(handle.gens, key=lambda g: order.key(g.leading_exponent(order))))
    return handle.with_cached_basis(order, basis)


def maximal_ideal_handle(ring: RingSpec) -> IdealHandle:
    return IdealHandle(ring, maximal_ideal_gens(ring))


# -- scalar invariants ----------------------------------------------------------


def _degree_monomials(ring: RingSpec, n: int) -> list[Polynomial]:
    """All monomials of total degree n (generators of m^n)."""
    d = ring.dim
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining + 1):
            rec(prefix + (k,), remaining - k, slots - 1)

    rec((), n, d)
    return [Polynomial.monomial(ring, e) for e in out]


_LOCAL_CAP_N = 80
_LOCAL_CAP_LEN = 200_000


def length(I) -> int:
    """ell(R_m / I R_m): the colength in the localization at the origin.

    Monomial ideals and globally origin-primary ideals are counted directly.
    An ideal whose global vanishing locus has points away from the origin (a
    parameter ideal like (X+Y+Z, X^2 Z, Y^3+Z^7) does) is truncated: the counts
    ell(R/(I + m^N)) increase to the local colength and, by Nakayama, the first
    repeat is exact.  Inputs with infinite local colength are rejected.
    """
    if isinstance(I, MonomialIdeal):
        return I.length()
    twin = monomial_twin(I)
    if twin is not None:
        return twin.length()
    try:
        sm = I.standard_monomials()
        if I.is_origin_primary():
            return sm.count
    except NotZeroDimensional:
        pass
    prev = None
    n = max(2, min(g.total_degree() for g in I.gens) + 1)
    while n <= _LOCAL_CAP_N:
        trunc = IdealHandle(I.ring, list(I.gens) + _degree_monomials(I.ring, n))
        count = trunc.standard_monomials().count
        if count == prev:
            if count == 0:
                raise NotOriginPrimary("ideal is the unit ideal locally at the origin")
            return count
        if count > _LOCAL_CAP_LEN:
            break
        prev = count
        n += 1
    raise NotOriginPrimary("no finite colength at the origin detected (N cap reached)")


def mu(I) -> int:
    """Minimal number of generators, computed as ell(R/mI) - ell(R/I)."""
    if isinstance(I, MonomialIdeal):
        m = maximal_ideal(I.ring)
        return m.product(I).length() - I.length()
    twin = monomial_twin(I)
    if twin is not None:
        return mu(twin)
    m = maximal_ideal_handle(I.ring)
    return length(m.product(I)) - length(I)


def adic_order(I) -> int:
    """Largest k with I inside m^k (the m-adic order)."""
    gens = I.to_polynomials() if isinstance(I, MonomialIdeal) else I.gens
    return min(g.min_term_degree() for g in gens)


order = adic_order


# -- length tables and the Bhattacharya fit ----------------------------------------


@dataclass(frozen=True)
class LengthTable:
    """Exact window of ell(R/m^r I^s) for r0 <= r < r0+width, s0 <= s < s0+width."""

    r0: int
    s0: int
    width: int
    values: tuple  # values[i][j] = ell at (r0+i, s0+j)

    def at(self, r: int, s: int) -> int:
        return self.values[r - self.r0][s - self.s0]

    def points(self):
        for i in range(self.width):
            for j in range(self.width):
                yield (self.r0 + i, self.s0 + j, self.values[i][j])

    def __post_init__(self):
        w = self.width
        if w < 1 or len(self.values) != w or any(len(row) != w for row in self.values):
            raise ValueError("table shape does not match width")
        for i in range(w):
            for j in range(w):
                if i and self.values[i][j] < self.values[i - 1][j]:
                    raise ValueError("lengths must be weakly increasing in r")
                if j and self.values[i][j] < self.values[i][j - 1]:
                    raise ValueError("lengths must be weakly increasing in s")


def length_table(I: IdealHandle, r0: int, s0: int, width: int) -> LengthTable:
    """Fill the window exactly; monomial inputs use raw product rows fed straight
    to the staircase counter (no quadratic minimalization on the big products)."""
    if width < 1:
        raise ValueError("width must be positive")
    twin = monomial_twin(I)
    rows_out = []
    if twin is not None:
        ring = I.ring
        m = maximal_ideal(ring)
        ipows = _mono_powers(twin, s0 + width - 1)
        mpows = _mono_powers(m, r0 + width - 1)
        for i in range(width):
            row = []
            mp = mpows[r0 + i]
            for j in range(width):
                rows = _pairwise_sum(mp.exps, ipows[s0 + j].exps)
                row.append(count_outside(rows))
            rows_out.append(tuple(row))
    else:
        m = maximal_ideal_handle(I.ring)
        ipows = _handle_powers(I, s0 + width - 1)
        mpows = _handle_powers(m, r0 + width - 1)
        for i in range(width):
            row = []
            for j in range(width):
                row.append(length(mpows[r0 + i].product(ipows[s0 + j])))
            rows_out.append(tuple(row))
    return LengthTable(r0, s0, width, tuple(rows_out))


def _mono_powers(M: MonomialIdeal, top: int) -> list[MonomialIdeal]:
    out = [None] * (top + 1)
    from .monomials import unit_ideal

    out[0] = unit_ideal(M.ring)
    for k in range(1, top + 1):
        out[k] = out[k - 1].product(M)
    return out


def _handle_powers(I: IdealHandle, top: int) -> list[IdealHandle]:
    out = [None] * (top + 1)
    out[0] = IdealHandle.unit(I.ring)
    for k in range(1, top + 1):
        out[k] = out[k - 1].product(I)
    return out


@dataclass(frozen=True)
class BhattacharyaForm:
    """Integer coefficients e[(i, j)] of the bigraded length polynomial in the
    basis binom(r+i, i) * binom(s+j, j), total degree <= d; the coefficients on
    the top diagonal i+j = d are the mixed multiplicities e_j(m|I) = e[(d-j, j)]."""

    d: int
    e: tuple  # sorted tuple of ((i, j), coefficient)

    @property
    def coefficients(self) -> dict:
        return dict(self.e)

    def mixed(self, j: int) -> int:
        """e_j(m|I): j copies of I and d-j copies of m."""
        return self.coefficients[(self.d - j, j)]

    @property
    def mixed_multiplicities(self) -> tuple:
        return tuple(self.mixed(j) for j in range(self.d + 1))

    def evaluate(self, r: int, s: int) -> int:
        return sum(c * comb(r + i, i) * comb(s + j, j) for (i, j), c in self.e)


def _basis_indices(d: int):
    return [(i, j) for t in range(d + 1) for i in range(t, -1, -1) for j in (t - i,)]


def bhattacharya_fit(table: LengthTable, d: int) -> BhattacharyaForm:
    """Exact interpolation over the lower-left (d+1)x(d+1) subgrid, validated
    against every remaining window point; any mismatch raises FitError."""
    idx = _basis_indices(d)
    k = len(idx)
    if table.width < d + 1:
        raise ValueError("window width %d cannot support a degree-%d fit" % (table.width, d))
    held = table.width**2 - (d + 1) ** 2
    if held < 2 * d:
        raise ValueError("window leaves %d held-out points; need at least %d" % (held, 2 * d))

    rows, rhs = [], []
    for i in range(d + 1):
        for j in range(d + 1):
            r, s = table.r0 + i, table.s0 + j
            rows.append([comb(r + a, a) * comb(s + b, b) for (a, b) in idx])
            rhs.append(table.values[i][j])
    result = solve_exact_linear(ExactMatrix(rows), rhs)
    if result.status != "unique":
        raise FitError("interpolation system %s; window outside the polynomial regime" % result.status)
    coeffs = {}
    for (i, j), c in zip(idx, result.solution):
        if c.denominator != 1:
            raise FitError("non-integer coefficient %s at %s; regime not reached" % (c, (i, j)))
        coeffs[(i, j)] = int(c)
    for j in range(d + 1):
        if coeffs[(d - j, j)] < 0:
            raise FitError("negative top coefficient e_%d = %d" % (j, coeffs[(d - j, j)]))

    form = BhattacharyaForm(d, tuple(sorted(coeffs.items())))
    residuals = []
    for r, s, val in table.points():
        if r - table.r0 <= d and s - table.s0 <= d:
            continue
        predicted = form.evaluate(r, s)
        if predicted != val:
            residuals.append((r, s, val - predicted))
    if residuals:
        raise FitError("held-out mismatch at %d points" % len(residuals), residuals)
    return form


def bhattacharya_fit_search(
    I: IdealHandle,
    start: int | None = None,
    width: int | None = None,
    retries: int = 5,
):
    """Shift the window outward (+2) until the fit reproduces every held-out
    point; returns (form, table).  Start defaults to dim+1; pass a larger value
    (e.g. a certified reduction number + 1) when one is known."""
    d = I.ring.dim
    if start is None:
        start = d + 1
    if width is None:
        width = d + 2
    last: FitError | None = None
    for attempt in range(retries + 1):
        origin = start + 2 * attempt
        table = length_table(I, origin, origin, width)
        try:
            return bhattacharya_fit(table, d), table
        except FitError as exc:
            last = exc
    raise FitError(
        "polynomial regime not reached in %d windows: %s" % (retries + 1, last),
        last.residuals if last else (),
    )


def param_multiplicity(J: IdealHandle) -> int:
    """Multiplicity of a parameter ideal: ell(R/J) (the ambient localized
    polynomial ring is Cohen-Macaulay)."""
    d = J.ring.dim
    if mu(J) != d:
        raise NotParameterIdeal("mu = %d but dim = %d" % (mu(J), d))
    return length(J)


# -- fiber-cone Hilbert series -----------------------------------------------------


@dataclass(frozen=True)
class HilbertNumerator:
    """Coefficients of h(t) with sum mu(I^n) t^n = h(t)/(1-t)^d; h0 = 1."""

    coefficients: tuple
    d: int
    mu_sequence: tuple

    @property
    def coefficient_sum(self) -> int:
        return sum(self.coefficients)


def fiber_hilbert(I: IdealHandle, N: int) -> HilbertNumerator:
    """Apply (1-t)^d as d-fold differencing to mu(I^n), n = 0..N; the tail of
    the differenced sequence must vanish (3 entries) or N is too small."""
    d = I.ring.dim
    if N < d + 3:
        raise ValueError("N = %d is too small to difference %d times" % (N, d))
    twin = monomial_twin(I)
    mus = [1]
    if twin is not None:
        m = maximal_ideal(I.ring)
        power = twin
        for _ in range(N):
            mus.append(m.product(power).length() - power.length())
            power = power.product(twin)
    else:
        m = maximal_ideal_handle(I.ring)
        pows = _handle_powers(I, N)
        for n in range(1, N + 1):
            mus.append(length(m.product(pows[n])) - length(pows[n]))

    seq = list(mus)
    for _ in range(d):
        seq = [seq[0]] + [seq[i] - seq[i - 1] for i in range(1, len(seq))]
    if any(seq[-3:]):
        raise StabilizationError(
            "generator counts not stabilized at N = %d; increase N (tail %s)" % (N, seq[-3:])
        )
    top = len(seq)
    while top > 0 and seq[top - 1] == 0:
        top -= 1
    coeffs = tuple(seq[:top])
    assert coeffs and coeffs[0] == 1, "h(0) must be 1 for an origin-primary ideal"
    return HilbertNumerator(coeffs, d, tuple(mus))
