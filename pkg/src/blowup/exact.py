"""Exact arithmetic substrate: coefficient fields, fraction-free linear solving,
and rational LP feasibility.

Rationals are ``fractions.Fraction`` (arbitrary precision, canonical gcd-reduced
form with positive denominator).  Arbitrary-precision integers are plain Python
``int``.  Prime-field elements are small immutable wrappers around residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Rational = Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class GFElement:
    """Residue in [0, p) for a prime p; supports field arithmetic operators."""

    __slots__ = ("p", "r")

    def __init__(self, r: int, p: int):
        self.r = r % p
        self.p = p

    def _check(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed prime-field moduli %d and %d" % (self.p, other.p))
            return other.r
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        r = self._check(other)
        return NotImplemented if r is NotImplemented else GFElement(self.r + r, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._check(other)
        return NotImplemented if r is NotImplemented else GFElement(self.r - r, self.p)

    def __rsub__(self, other):
        r = self._check(other)
        return NotImplemented if r is NotImplemented else GFElement(r - self.r, self.p)

    def __mul__(self, other):
        r = self._check(other)
        return NotImplemented if r is NotImplemented else GFElement(self.r * r, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return NotImplemented
        if r == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.r * pow(r, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        r = self._check(other)
        if r is NotImplemented:
            return NotImplemented
        if self.r == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(r * pow(self.r, self.p - 2, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.r, self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.r == other.r
        if isinstance(other, int):
            return self.r == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.r))

    def __bool__(self):
        return self.r != 0

    def __repr__(self):
        return "GF(%d)(%d)" % (self.p, self.r)


@dataclass(frozen=True)
class RationalField:
    """Coefficient-field tag for the rationals."""

    name: str = "QQ"

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError("cannot coerce %r into QQ" % (x,))

    def one(self) -> Fraction:
        return Fraction(1)

    def zero(self) -> Fraction:
        return Fraction(0)

    def sort_value(self, c: Fraction):
        return c

    def __str__(self):
        return "QQ"


DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class PrimeField:
    """Coefficient-field tag GF(p); p must be prime."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError("%d is not prime" % self.p)

    def coerce(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("element of GF(%d) used in GF(%d)" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return GFElement(x, self.p)
        raise TypeError("cannot coerce %r into GF(%d)" % (x, self.p))

    def one(self) -> GFElement:
        return GFElement(1, self.p)

    def zero(self) -> GFElement:
        return GFElement(0, self.p)

    def sort_value(self, c: GFElement):
        return c.r

    def __str__(self):
        return "GF(%d)" % self.p


QQ = RationalField()

FieldTag = Union[RationalField, PrimeField]


class ExactMatrix:
    """Rectangular matrix of rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not rows:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __repr__(self):
        return "ExactMatrix(%r)" % (self.rows,)


@dataclass(frozen=True)
class LinearSolveResult:
    """Outcome of an exact solve: status is 'unique', 'inconsistent' or
    'underdetermined'; on 'unique' the solution satisfies A x = b exactly.
    The row-reduced augmented matrix is kept as a certificate."""

    status: str
    solution: tuple | None
    echelon: tuple


def _row_to_ints(row):
    lcm = 1
    for x in row:
        d = x.denominator
        lcm = lcm * d // _gcd(lcm, d)
    return [int(x * lcm) for x in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve_exact_linear(A: ExactMatrix, b: Sequence) -> LinearSolveResult:
    """Solve A x = b exactly by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; the Bareiss pivot rule keeps every
    intermediate entry an exact integer, bounding coefficient growth.
    """
    b = [Fraction(x) for x in b]
    if len(b) != A.nrows:
        raise ValueError("dimension mismatch: %d rows vs %d rhs entries" % (A.nrows, len(b)))
    m, n = A.nrows, A.ncols
    M = [_row_to_ints(list(A.rows[i]) + [b[i]]) for i in range(m)]

    prev = 1
    piv_r = 0
    piv_cols = []
    for col in range(n):
        pr = None
        for i in range(piv_r, m):
            if M[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != piv_r:
            M[piv_r], M[pr] = M[pr], M[piv_r]
        p = M[piv_r][col]
        for i in range(piv_r + 1, m):
            mi, mp = M[i], M[piv_r]
            f = mi[col]
            for j in range(col, n + 1):
                mi[j] = (p * mi[j] - f * mp[j]) // prev
        prev = p
        piv_cols.append(col)
        piv_r += 1
        if piv_r == m:
            break

    echelon = tuple(tuple(Fraction(x) for x in row) for row in M)
    for i in range(piv_r, m):
        if M[i][n] != 0:
            return LinearSolveResult("inconsistent", None, echelon)
    if len(piv_cols) < n:
        return LinearSolveResult("underdetermined", None, echelon)

    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        row = M[k]
        s = Fraction(row[n])
        for j in range(piv_cols[k] + 1, n):
            s -= row[j] * x[j]
        x[k] = s / row[piv_cols[k]]
    return LinearSolveResult("unique", tuple(x), echelon)


@dataclass(frozen=True)
class LinConstraint:
    """One exact linear constraint sum(coeffs * x) rel rhs with rel in {<=, >=, ==}."""

    coeffs: tuple
    rel: str
    rhs: Fraction

    @classmethod
    def of(cls, coeffs, rel, rhs) -> "LinConstraint":
        if rel not in ("<=", ">=", "=="):
            raise ValueError("bad relation %r" % rel)
        return cls(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple | None


def lp_feasible(constraints: Sequence[LinConstraint], nvars: int) -> LPResult:
    """Exact rational feasibility via phase-1 simplex with Bland's rule.

    Variables are free; each is split into a difference of nonnegatives
    internally.  Returns a witness point satisfying every constraint exactly
    when feasible; 'infeasible' is exact (no rational point exists).
    """
    if any(len(c.coeffs) != nvars for c in constraints):
        raise ValueError("constraint arity does not match nvars=%d" % nvars)
    if not constraints:
        return LPResult(True, tuple(Fraction(0) for _ in range(nvars)))

    rows = []
    for c in constraints:
        coeffs, rel, rhs = list(c.coeffs), c.rel, c.rhs
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        rows.append((coeffs, rel, rhs))

    nsplit = 2 * nvars
    nslack = sum(1 for _, rel, _ in rows if rel != "==")
    m = len(rows)
    width = nsplit + nslack + m + 1  # + artificials + rhs
    zero = Fraction(0)
    one = Fraction(1)

    tableau = []
    basis = []
    si = 0
    for ri, (coeffs, rel, rhs) in enumerate(rows):
        row = [zero] * width
        for j, a in enumerate(coeffs):
            row[2 * j] = a
            row[2 * j + 1] = -a
        if rel != "==":
            row[nsplit + si] = one if rel == "<=" else -one
            si += 1
        art = nsplit + nslack + ri
        row[art] = one
        row[-1] = rhs
        tableau.append(row)
        basis.append(art)

    # phase-1 objective: minimize the artificial sum; cost row holds reduced costs
    cost = [zero] * width
    for row in tableau:
        for j in range(width):
            cost[j] -= row[j]
    for ri in range(m):
        cost[nsplit + nslack + ri] += one  # artificial columns cost 1

    ncols = width - 1
    while True:
        enter = -1
        for j in range(ncols):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # unbounded phase-1 cannot happen (objective bounded below by 0)
            raise RuntimeError("phase-1 simplex unbounded; malformed tableau")
        piv = tableau[leave][enter]
        prow = tableau[leave]
        inv = one / piv
        for j in range(width):
            prow[j] *= inv
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                ri_ = tableau[i]
                for j in range(width):
                    ri_[j] -= f * prow[j]
        if cost[enter] != 0:
            f = cost[enter]
            for j in range(width):
                cost[j] -= f * prow[j]
        basis[leave] = enter

    objective = -cost[-1]
    if objective != 0:
        return LPResult(False, None)

    values = [zero] * ncols
    for i, bj in enumerate(basis):
        if bj < ncols:
            values[bj] = tableau[i][-1]
        elif tableau[i][-1] != 0:
            return LPResult(False, None)
    witness = tuple(values[2 * j] - values[2 * j + 1] for j in range(nvars))
    for c in constraints:
        lhs = sum(a * w for a, w in zip(c.coeffs, witness))
        ok = lhs <= c.rhs if c.rel == "<=" else lhs >= c.rhs if c.rel == ">=" else lhs == c.rhs
        assert ok, "simplex witness violates a constraint; engine bug"
    return LPResult(True, witness)
