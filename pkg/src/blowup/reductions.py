"""Blowup-algebra diagnostics: reduction certificates, Valabrega-Valla
equality reports, joint reductions, minimal mixed multiplicity, contractedness,
H1 vanishing, and colon-power checks.

Every certificate is verified by exact ideal identities.  Binary operations
route through the monomial module when both operands are monomial and through
the Groebner toolkit otherwise; the two paths agree (tested as oracles).

Identity checks compare ideals globally, which matches the local (at the
origin) statements only when the participating ideals are supported at the
origin; the search routines therefore restrict themselves to candidates whose
element ideals are globally origin-primary (homogeneous candidates first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import invariants as inv
from .ideals import IdealHandle
from .invariants import handle_from_monomial, monomial_twin
from .monomials import MonomialIdeal, NotOriginPrimary, maximal_ideal, unit_ideal
from .rings import GREVLEX, Polynomial, RingSpec


class ReductionNotCertified(RuntimeError):
    """No reduction exponent found within the configured bound."""


# -- routed ideal values -------------------------------------------------------


class _Routed:
    """An ideal carried as a handle plus, when available, its monomial twin."""

    __slots__ = ("handle", "mono")

    def __init__(self, handle: IdealHandle, mono: MonomialIdeal | None):
        self.handle = handle
        self.mono = mono

    @classmethod
    def of(cls, handle: IdealHandle) -> "_Routed":
        return cls(handle, monomial_twin(handle))

    @classmethod
    def from_mono(cls, mono: MonomialIdeal) -> "_Routed":
        return cls(handle_from_monomial(mono), mono)

    def product(self, other: "_Routed") -> "_Routed":
        if self.mono is not None and other.mono is not None:
            return _Routed.from_mono(self.mono.product(other.mono))
        return _Routed.of(self.handle.product(other.handle))

    def sum(self, other: "_Routed") -> "_Routed":
        if self.mono is not None and other.mono is not None:
            return _Routed.from_mono(self.mono.sum(other.mono))
        return _Routed.of(self.handle.sum(other.handle))

    def intersect(self, other: "_Routed") -> "_Routed":
        if self.mono is not None and other.mono is not None:
            return _Routed.from_mono(self.mono.intersect(other.mono))
        return _Routed.of(self.handle.intersect(other.handle))

    def colon(self, other: "_Routed") -> "_Routed":
        if self.mono is not None and other.mono is not None:
            return _Routed.from_mono(self.mono.colon(other.mono))
        return _Routed.of(self.handle.colon(other.handle))

    def scale(self, f: Polynomial) -> "_Routed":
        if self.mono is not None and f.is_monomial():
            single = MonomialIdeal.from_polynomials(f.ring, [f.monic(GREVLEX)])
            return _Routed.from_mono(self.mono.product(single))
        return _Routed.of(self.handle.scale(f))

    def contains(self, other: "_Routed") -> bool:
        if self.mono is not None and other.mono is not None:
            return self.mono.contains(other.mono)
        return self.handle.contains(other.handle)

    def equals(self, other: "_Routed") -> bool:
        if self.mono is not None and other.mono is not None:
            return self.mono == other.mono
        return self.handle.equals(other.handle)


class _Powers:
    """Cache of routed powers of a fixed ideal."""

    def __init__(self, base: _Routed):
        self.base = base
        ring = base.handle.ring
        if base.mono is not None:
            self._list = [_Routed.from_mono(unit_ideal(ring))]
        else:
            self._list = [_Routed.of(IdealHandle.unit(ring))]

    def __getitem__(self, n: int) -> _Routed:
        while len(self._list) <= n:
            self._list.append(self._list[-1].product(self.base))
        return self._list[n]


def _routed_m(ring: RingSpec) -> _Routed:
    return _Routed.from_mono(maximal_ideal(ring))


# -- reduction numbers -----------------------------------------------------------


@dataclass(frozen=True)
class ReductionCertificate:
    """J J-reduces I with exponent r: J I^r = I^{r+1} verified exactly, the
    equality fails at r-1 (when r >= 1), and persistence was spot-checked at
    r+1.  minimal records mu(J) == dim."""

    I: IdealHandle
    J: IdealHandle
    r: int
    n_verified: int
    minimal: bool


def reduction_number(I: IdealHandle, J: IdealHandle, n_max: int = 6) -> ReductionCertificate:
    """Smallest r <= n_max with J I^r = I^{r+1}; raises when none certifies."""
    if J.ring != I.ring:
        raise ValueError("I and J live in different rings")
    if not I.contains(J):
        raise ValueError("J is not contained in I")
    if not I.is_origin_primary():
        raise NotOriginPrimary("I is not origin-primary")
    if not J.is_origin_primary():
        raise NotOriginPrimary("J is not origin-primary")
    RI = _Routed.of(I)
    RJ = _Routed.of(J)
    pows = _Powers(RI)
    for r in range(n_max + 1):
        lhs = RJ.product(pows[r])
        if lhs.equals(pows[r + 1]):
            nxt = RJ.product(pows[r + 1])
            assert nxt.equals(pows[r + 2]), "reduction equality did not persist at r+1"
            minimal = inv.mu(J) == I.ring.dim
            return ReductionCertificate(I, J, r, r + 1, minimal)
    raise ReductionNotCertified("not certified as reduction up to bound %d" % n_max)


def _pure_power_axes(p: Polynomial) -> set[int]:
    """Axes k such that some term of p is a positive pure power of variable k."""
    out = set()
    for e in p.terms:
        support = [i for i, x in enumerate(e) if x]
        if len(support) == 1:
            out.add(support[0])
    return out


def _axis_filter(cand, d: int) -> bool:
    covered = set()
    for p in cand:
        covered |= _pure_power_axes(p)
    return len(covered) == d


def find_minimal_reduction(
    I: IdealHandle,
    pool=(1, 2, 3, -1, -2),
    attempts: int = 24,
    n_max: int = 6,
) -> ReductionCertificate | None:
    """Deterministic search for a d-generated reduction inside I.

    Candidates are built from the generators: plain d-subsets, then d-subsets
    with one member replaced by a sum of two generators, then pool-weighted
    combinations from a seeded enumeration.  A candidate must have a pure-power
    term on every axis (necessary for finite colength), be origin-primary, and
    is tried in increasing colength order; the first certified one wins.
    """
    ring = I.ring
    d = ring.dim
    if not I.is_origin_primary():
        raise NotOriginPrimary("I is not origin-primary")
    gens = list(I.gens)
    if len(gens) < d:
        return None

    def stages():
        yield list(itertools.combinations(gens, d))
        stage = []
        for base in itertools.combinations(gens, d):
            for idx in range(d):
                for extra in gens:
                    if extra in base:
                        continue
                    cand = list(base)
                    cand[idx] = cand[idx] + extra
                    stage.append(tuple(cand))
        yield stage
        import random

        rng = random.Random(90121)
        stage = []
        for _ in range(200):
            cand = []
            for _ in range(d):
                k = rng.randint(1, min(3, len(gens)))
                picks = rng.sample(range(len(gens)), k)
                coeffs = [rng.choice(pool) for _ in picks]
                p = Polynomial.zero(ring)
                for c, idx in zip(coeffs, picks):
                    p = p + gens[idx] * c
                cand.append(p)
            stage.append(tuple(cand))
        yield stage

    tried = 0
    for stage in stages():
        scored = []
        for index, cand in enumerate(stage):
            if any(g.is_zero() for g in cand):
                continue
            if not _axis_filter(cand, d):
                continue
            J = IdealHandle(ring, cand)
            if len(J.gens) != d:
                continue
            if not J.is_origin_primary():
                continue
            scored.append((inv.length(J), index, J))
        scored.sort(key=lambda t: (t[0], t[1]))
        for _, _, J in scored:
            if tried >= attempts:
                return None
            tried += 1
            try:
                cert = reduction_number(I, J, n_max)
            except ReductionNotCertified:
                continue
            if cert.minimal:
                return cert
    return None


# -- Valabrega-Valla ---------------------------------------------------------------


@dataclass(frozen=True)
class VVReport:
    """Per-exponent record of J cap I^n = J I^{n-1}; all-pass up to the
    reduction number decides Cohen-Macaulayness of the associated graded ring
    (Valabrega-Valla criterion)."""

    per_n: tuple  # ((n, bool), ...)
    first_failure: int | None
    witness: Polynomial | None
    g_cohen_macaulay: bool
    note: str

    @property
    def all_pass(self) -> bool:
        return self.first_failure is None


def vv_check(cert: ReductionCertificate, n_max: int | None = None) -> VVReport:
    """Check J cap I^n = J I^{n-1} for n = 1..n_max (default r+2; must cover r).

    The containment J I^{n-1} inside J cap I^n is asserted unconditionally; on
    the first equality failure the report carries a witness generator of the
    intersection that is not in the product.
    """
    r = cert.r
    if n_max is None:
        n_max = r + 2
    if n_max < r:
        raise ValueError("n_max = %d does not reach the reduction number %d" % (n_max, r))
    RI = _Routed.of(cert.I)
    RJ = _Routed.of(cert.J)
    pows = _Powers(RI)
    per_n = []
    first_failure = None
    witness = None
    for n in range(1, n_max + 1):
        inter = RJ.intersect(pows[n])
        prod = RJ.product(pows[n - 1])
        assert inter.contains(prod), "J I^{n-1} must sit inside J cap I^n"
        ok = prod.contains(inter)
        per_n.append((n, ok))
        if not ok and first_failure is None:
            first_failure = n
            for g in inter.handle.gens:
                if not prod.handle.contains_poly(g):
                    witness = g
                    break
    if first_failure is None:
        return VVReport(tuple(per_n), None, None, True, "G(I) Cohen-Macaulay (Valabrega-Valla)")
    return VVReport(
        tuple(per_n),
        first_failure,
        witness,
        False,
        "G(I) not Cohen-Macaulay (Valabrega-Valla fails at n = %d)" % first_failure,
    )


# -- joint reductions -----------------------------------------------------------------


@dataclass(frozen=True)
class JointReductionCertificate:
    """(x; a_1..a_{d-1}) is a joint reduction of (m, I, ..., I): the defining
    identity [x I^{d-1} + sum_i a_i m I^{d-2}] (m I^{d-1})^{n-1} = (m I^{d-1})^n
    holds at the recorded exponent n."""

    x: Polynomial
    a: tuple
    n: int


def joint_reduction_verify(
    x: Polynomial,
    a: list[Polynomial],
    I: IdealHandle,
    n_max: int = 4,
) -> JointReductionCertificate | None:
    """Certificate at the smallest verifying n <= n_max, else None."""
    ring = I.ring
    d = ring.dim
    if len(a) != d - 1:
        raise ValueError("need d-1 = %d elements from I" % (d - 1))
    if x.is_zero() or x.min_term_degree() < 1:
        raise ValueError("x must lie in the maximal ideal")
    for ai in a:
        if not I.contains_poly(ai):
            raise ValueError("element %s is not in I" % ai)
    elem = IdealHandle(ring, [x, *a])
    if not elem.is_origin_primary():
        raise NotOriginPrimary(
            "(x, a) must generate an origin-primary ideal for exact global checks"
        )
    RI = _Routed.of(I)
    m = _routed_m(ring)
    pows = _Powers(RI)
    P = m.product(pows[d - 1])
    base = pows[d - 1].scale(x)
    mI_low = m.product(pows[d - 2])
    for ai in a:
        base = base.sum(mI_low.scale(ai))
    ppows = _Powers(P)
    for n in range(1, n_max + 1):
        lhs = base.product(ppows[n - 1])
        rhs = ppows[n]
        assert rhs.contains(lhs), "joint-reduction left side escapes (m I^{d-1})^n"
        if lhs.contains(rhs):
            return JointReductionCertificate(x, tuple(a), n)
    return None


def _linear_form_candidates(ring: RingSpec) -> list[Polynomial]:
    vs = [Polynomial.variable(ring, v) for v in ring.variables]
    out = []
    if len(vs) > 1:
        total = vs[0]
        for v in vs[1:]:
            total = total + v
        out.append(total)
    out.extend(vs)
    for i, j in itertools.combinations(range(len(vs)), 2):
        out.append(vs[i] + vs[j])
    return out


def _is_homogeneous(p: Polynomial) -> bool:
    degs = {sum(e) for e in p.terms}
    return len(degs) == 1


def find_joint_reduction(
    I: IdealHandle,
    reduction: ReductionCertificate | None = None,
    expected_multiplicity: int | None = None,
    n_max: int = 4,
    attempts: int = 24,
) -> JointReductionCertificate | None:
    """Deterministic search for a joint reduction of (m, I^[d-1]).

    x runs over small linear forms; the a-tuple over homogeneous elements built
    from a certified reduction's generators and from I's generators.  Candidates
    whose parameter ideal (x, a) is not origin-primary are skipped; when the
    expected mixed multiplicity is supplied, candidates with a different
    colength are skipped (they cannot be joint reductions)."""
    ring = I.ring
    d = ring.dim
    a_pool: list[tuple] = []
    if reduction is not None:
        jgens = [g for g in reduction.J.gens if _is_homogeneous(g)]
        a_pool.extend(itertools.combinations(jgens, d - 1))
    homog = [g for g in I.gens if _is_homogeneous(g)]
    a_pool.extend(itertools.combinations(homog, d - 1))
    pairs = []
    for gi, gj in itertools.combinations(homog, 2):
        if gi.total_degree() == gj.total_degree():
            pairs.append(gi + gj)
    for combo in itertools.combinations(homog + pairs, d - 1):
        if any(p in pairs for p in combo):
            a_pool.append(combo)

    seen = set()
    tried = 0
    for x in _linear_form_candidates(ring):
        for a in a_pool:
            key = (str(x),) + tuple(str(p) for p in a)
            if key in seen:
                continue
            seen.add(key)
            try:
                elem = IdealHandle(ring, [x, *a])
            except ValueError:
                continue
            if len(elem.gens) != d or not elem.is_origin_primary():
                continue
            if expected_multiplicity is not None and inv.length(elem) != expected_multiplicity:
                continue
            if tried >= attempts:
                return None
            tried += 1
            try:
                cert = joint_reduction_verify(x, list(a), I, n_max)
            except (ValueError, NotOriginPrimary):
                continue
            if cert is not None:
                return cert
    return None


# -- minimal mixed multiplicity and contractedness ---------------------------------------


@dataclass(frozen=True)
class MmmReport:
    """mu(I) compared against e_{d-1}(m|I) + d - 1, plus (when found) a joint
    reduction witnessing the defining identity m I = x I + (a) m."""

    is_mmm: bool
    mu: int
    e_top: int
    joint_reduction: JointReductionCertificate | None
    identity_holds: bool | None


def mmm_check(
    I: IdealHandle,
    fit=None,
    reduction: ReductionCertificate | None = None,
    n_max_joint: int = 4,
) -> MmmReport:
    """Minimal mixed multiplicity test; fit defaults to a fresh window search."""
    d = I.ring.dim
    mu_I = inv.mu(I)
    if fit is None:
        start = max(reduction.r if reduction is not None else 0, d) + 1
        fit, _ = inv.bhattacharya_fit_search(I, start=start)
    e_top = fit.mixed(d - 1)
    is_mmm = mu_I == e_top + d - 1
    jr = None
    identity = None
    if is_mmm:
        jr = find_joint_reduction(
            I, reduction, expected_multiplicity=e_top, n_max=n_max_joint
        )
        if jr is not None:
            m = _routed_m(I.ring)
            RI = _Routed.of(I)
            lhs = RI.scale(jr.x)
            for ai in jr.a:
                lhs = lhs.sum(m.scale(ai))
            identity = lhs.equals(m.product(RI))
    return MmmReport(is_mmm, mu_I, e_top, jr, identity)


@dataclass(frozen=True)
class ContractedReport:
    is_contracted: bool
    mu: int
    order: int


def contracted_check_2d(I: IdealHandle) -> ContractedReport:
    """In dimension 2, contracted ideals are exactly those with mu = order + 1."""
    if I.ring.dim != 2:
        raise ValueError("contractedness test requires a 2-dimensional ring")
    if not I.is_origin_primary():
        raise NotOriginPrimary("I is not origin-primary")
    mu_I = inv.mu(I)
    o = inv.adic_order(I)
    return ContractedReport(mu_I == o + 1, mu_I, o)


# -- H1 vanishing -------------------------------------------------------------------------


@dataclass(frozen=True)
class H1Report:
    """Vanishing of the first homology obstruction at level n, via the ideal
    identity ((x, a) cap m I^n) = x I^n + (a) m I^{n-1}; the right side is
    contained in the left unconditionally.  The two bookkeeping identities for
    m I^n (linear and powered variants) are recorded without being asserted."""

    n: int
    vanishes: bool
    witness: Polynomial | None
    identity_linear: bool | None
    identity_powered: bool | None


def h1_vanishing_check(
    I: IdealHandle,
    x: Polynomial,
    a: list[Polynomial],
    n: int,
    record_variants: bool = True,
) -> H1Report:
    if n < 1:
        raise ValueError("n must be at least 1")
    ring = I.ring
    d = ring.dim
    if len(a) != d - 1:
        raise ValueError("need d-1 elements from I")
    if x.min_term_degree() < 1:
        raise ValueError("x must lie in the maximal ideal")
    for ai in a:
        if not I.contains_poly(ai):
            raise ValueError("element %s is not in I" % ai)
    elem = IdealHandle(ring, [x, *a])
    if not elem.is_origin_primary():
        raise NotOriginPrimary(
            "(x, a) must generate an origin-primary ideal for exact global checks"
        )
    RI = _Routed.of(I)
    m = _routed_m(ring)
    pows = _Powers(RI)
    mIn = m.product(pows[n])
    denom = pows[n].scale(x)
    mIn1 = m.product(pows[n - 1])
    for ai in a:
        denom = denom.sum(mIn1.scale(ai))
    numer = _Routed.of(elem).intersect(mIn)
    # reverse containment holds by construction; assert it exactly
    assert all(elem.contains_poly(g) for g in denom.handle.gens)
    assert mIn.contains(denom), "x I^n + (a) m I^{n-1} must sit inside m I^n"
    vanishes = denom.contains(numer)
    witness = None
    if not vanishes:
        for g in numer.handle.gens:
            if not denom.handle.contains_poly(g):
                witness = g
                break
    identity_linear = None
    identity_powered = None
    if record_variants:
        identity_linear = denom.contains(mIn)
        powered = pows[n].scale(x)
        for ai in a:
            powered = powered.sum(m.scale(ai**n))
        identity_powered = powered.equals(mIn)
    return H1Report(n, vanishes, witness, identity_linear, identity_powered)


# -- colon powers ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColonPowerReport:
    per_n: tuple  # ((n, bool), ...)
    first_failure: int | None

    @property
    def all_pass(self) -> bool:
        return self.first_failure is None


def colon_power_check(I: IdealHandle, a: Polynomial, n_max: int = 5) -> ColonPowerReport:
    """Check (I^n : a) = I^{n-1} for n = 1..n_max."""
    if not I.contains_poly(a):
        raise ValueError("element %s is not in I" % a)
    if not I.is_origin_primary():
        raise NotOriginPrimary("I is not origin-primary")
    RI = _Routed.of(I)
    pows = _Powers(RI)
    single = _Routed.of(IdealHandle(I.ring, [a]))
    per_n = []
    first_failure = None
    for n in range(1, n_max + 1):
        quotient = pows[n].colon(single)
        ok = quotient.equals(pows[n - 1])
        per_n.append((n, ok))
        if not ok and first_failure is None:
            first_failure = n
    return ColonPowerReport(tuple(per_n), first_failure)
