"""Monomial ideals: minimal generators, staircase length counting, ideal
arithmetic, and Newton-polyhedron integral closure.

This module is an independent fast path: it never calls the Buchberger engine,
so its operations double as oracles for the general ideal toolkit.  Exponent
rows live in int64 numpy arrays and the inner loops sit in `blowup.kernels`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .exact import LinConstraint, lp_feasible
from .rings import Polynomial, RingSpec

_BOX_LIMIT = 200_000


class NotOriginPrimary(ValueError):
    """Raised when a length-type operation is applied to an ideal that is not
    supported only at the origin."""


class MonomialIdeal:
    """Minimal monomial generators, canonically sorted; immutable."""

    __slots__ = ("ring", "exps")

    def __init__(self, ring: RingSpec, exps: np.ndarray):
        # trusted constructor: exps already unique + minimal + sorted
        self.ring = ring
        exps.setflags(write=False)
        self.exps = exps

    @classmethod
    def from_exponents(cls, ring: RingSpec, exponents) -> "MonomialIdeal":
        rows = np.asarray(list(exponents), dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != ring.dim:
            raise ValueError("exponent rows must have width %d" % ring.dim)
        if rows.shape[0] == 0:
            raise ValueError("need at least one generator")
        if (rows < 0).any():
            raise ValueError("negative exponent")
        return cls(ring, _minimalize_rows(rows))

    @classmethod
    def from_polynomials(cls, ring: RingSpec, polys) -> "MonomialIdeal":
        exps = []
        for p in polys:
            if not isinstance(p, Polynomial) or p.ring != ring:
                raise ValueError("generators must be polynomials over %s" % ring)
            if not p.is_monomial():
                raise ValueError("%s is not a monomial" % p)
            exps.append(next(iter(p.terms)))
        return cls.from_exponents(ring, exps)

    # -- basic structure -----------------------------------------------------

    @property
    def num_generators(self) -> int:
        return self.exps.shape[0]

    def generator_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.exps]

    def to_polynomials(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial.monomial(self.ring, e) for e in self.generator_tuples())

    def is_unit(self) -> bool:
        return bool((self.exps == 0).all(axis=1).any())

    def is_origin_primary(self) -> bool:
        """True iff a pure power of every variable occurs among the generators."""
        d = self.ring.dim
        for k in range(d):
            others = [j for j in range(d) if j != k]
            if (self.exps[:, others] == 0).all(axis=1).any():
                continue
            return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.exps.shape == other.exps.shape
            and bool((self.exps == other.exps).all())
        )

    def __hash__(self):
        return hash((self.ring, self.exps.tobytes()))

    def __repr__(self):
        mons = ", ".join(str(p) for p in self.to_polynomials())
        return "MonomialIdeal(%s)" % mons

    # -- membership and comparison -------------------------------------------

    def contains_exponent(self, e) -> bool:
        pt = np.asarray([e], dtype=np.int64)
        return bool(kernels.divides_any(self.exps, pt)[0])

    def contains(self, other: "MonomialIdeal") -> bool:
        self._check_ring(other)
        return bool(kernels.divides_any(self.exps, other.exps).all())

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("operands live in %s and %s" % (self.ring, other.ring))

    # -- arithmetic ------------------------------------------------------------

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        return MonomialIdeal(self.ring, _minimalize_rows(np.vstack([self.exps, other.exps])))

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        rows = _pairwise_sum(self.exps, other.exps)
        return MonomialIdeal(self.ring, _minimalize_rows(rows))

    def power(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("negative power")
        result = unit_ideal(self.ring)
        for _ in range(k):
            result = result.product(self)
        return result

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        rows = np.maximum(self.exps[:, None, :], other.exps[None, :, :]).reshape(-1, self.ring.dim)
        return MonomialIdeal(self.ring, _minimalize_rows(rows))

    def colon_exponent(self, a) -> "MonomialIdeal":
        a = np.asarray(a, dtype=np.int64)
        rows = np.maximum(self.exps - a, 0)
        return MonomialIdeal(self.ring, _minimalize_rows(rows))

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_ring(other)
        result = None
        for row in other.exps:
            piece = self.colon_exponent(row)
            result = piece if result is None else result.intersect(piece)
        return result

    # -- lengths ---------------------------------------------------------------

    def length(self) -> int:
        """Number of monomials outside the ideal (= dim of the quotient)."""
        if not self.is_origin_primary():
            raise NotOriginPrimary("no pure power of every variable: %r" % self)
        return count_outside(self.exps)

    # -- integral closure -------------------------------------------------------

    def newton_closure(self) -> "MonomialIdeal":
        """Lattice-point closure of the Newton polyhedron conv(gens) + R^d_{>=0}."""
        gens = self.exps
        d = self.ring.dim
        box_max = gens.max(axis=0)
        size = int(np.prod(box_max + 1))
        if size > _BOX_LIMIT:
            raise ValueError("closure search box has %d points (limit %d)" % (size, _BOX_LIMIT))
        grid = np.indices(tuple(int(b) + 1 for b in box_max)).reshape(d, -1).T.astype(np.int64)
        inside = kernels.divides_any(gens, grid)
        extra = []
        k = gens.shape[0]
        ones = [Fraction(1)] * k
        base = [LinConstraint.of(ones, "==", 1)]
        for c in range(d):
            col = [Fraction(int(x)) for x in gens[:, c]]
            base.append(LinConstraint.of(col, "<=", 0))  # rhs replaced per point
        nonneg = [
            LinConstraint.of([1 if i == j else 0 for j in range(k)], ">=", 0) for i in range(k)
        ]
        for pt, is_in in zip(grid, inside):
            if is_in:
                continue
            cons = [base[0]]
            for c in range(d):
                cons.append(LinConstraint.of(base[c + 1].coeffs, "<=", int(pt[c])))
            cons.extend(nonneg)
            if lp_feasible(cons, k).feasible:
                extra.append(pt)
        rows = np.vstack([gens] + [np.asarray(extra, dtype=np.int64)]) if extra else gens
        closed = MonomialIdeal(self.ring, _minimalize_rows(rows))
        assert (closed.exps <= box_max[None, :]).all(), "closure generator escaped the box"
        return closed

    def is_complete(self) -> bool:
        """Whether the ideal equals its integral closure."""
        return self.newton_closure() == self


def unit_ideal(ring: RingSpec) -> MonomialIdeal:
    return MonomialIdeal(ring, np.zeros((1, ring.dim), dtype=np.int64))


def maximal_ideal(ring: RingSpec) -> MonomialIdeal:
    return MonomialIdeal(ring, np.unique(np.eye(ring.dim, dtype=np.int64), axis=0))


def minimalize(ring: RingSpec, exponents) -> MonomialIdeal:
    """Divisibility-minimal generating set; mu is its cardinality."""
    return MonomialIdeal.from_exponents(ring, exponents)


def _minimalize_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.unique(rows, axis=0)
    if rows.shape[0] <= 1:
        return rows
    return rows[kernels.minimal_mask(rows)]


def _pairwise_sum(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (A[:, None, :] + B[None, :, :]).reshape(-1, A.shape[1])


def count_outside(rows: np.ndarray) -> int:
    """Monomials outside the ideal generated by the (not necessarily minimal)
    exponent rows; requires a pure power of every variable among the rows.

    Recursion splits on the last variable: levels between consecutive distinct
    last-exponents share the same colon-slice ideal, whose projection is
    counted in one lower dimension.  Slices are memoized by canonical rows.
    """
    d = rows.shape[1]
    for k in range(d):
        others = [j for j in range(d) if j != k]
        if not (rows[:, others] == 0).all(axis=1).any():
            raise NotOriginPrimary("no pure power of variable index %d" % k)
    return _count(np.unique(rows, axis=0), {})


def _count(rows: np.ndarray, memo: dict) -> int:
    if (rows == 0).all(axis=1).any():
        return 0
    d = rows.shape[1]
    if d == 1:
        return int(rows.min())
    if d == 2:
        c = int(kernels.staircase_count_2d(rows))
        assert c >= 0, "staircase precondition violated"
        return c
    key = rows.tobytes()
    hit = memo.get(key)
    if hit is not None:
        return hit

    z = rows[:, -1]
    order = np.argsort(z, kind="stable")
    rows_sorted = rows[order]
    z_sorted = z[order]
    cuts, starts = np.unique(z_sorted, return_index=True)
    assert cuts[0] == 0, "pure powers of the other variables ensure a level-0 slice"
    total = 0
    for i, cut in enumerate(cuts):
        upper = None if i + 1 == len(cuts) else int(cuts[i + 1])
        stop = starts[i + 1] if i + 1 < len(starts) else rows_sorted.shape[0]
        slice_rows = np.unique(rows_sorted[:stop, :-1], axis=0)
        c = _count(slice_rows, memo)
        if upper is None:
            assert c == 0, "top slice must be the unit ideal (pure power present)"
        else:
            total += (upper - int(cut)) * c
    memo[key] = total
    return total
