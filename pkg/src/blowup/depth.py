"""Depth inference for the Rees ring R(I), the associated graded ring G(I),
and the fiber cone F(I) of an origin-primary ideal in a localized polynomial
ring, as a fixed-point rule engine over exact diagnostics.

Each rule encodes one theorem about blowup algebras (see RULES); the verdict
carries integer depth intervals per algebra, Cohen-Macaulay flags, and the
chain of rule firings that justifies every tightening.  Inconsistent facts
(an empty interval) abort with a diagnostic dump rather than a silent answer.
"""

from __future__ import annotations

from dataclasses import dataclass


RULES = {
    "R0": "complete ideal in a 2-dimensional regular local ring: R(I), G(I), F(I) are all Cohen-Macaulay",
    "R1": "m-primary ideal in a regular local ring: depth R(I) = depth G(I) + 1",
    "R2": "dimension 2, regular: R(I) Cohen-Macaulay implies G(I) and F(I) Cohen-Macaulay",
    "R3": "contracted ideal in dimension 2: F(I) Cohen-Macaulay iff G(I) Cohen-Macaulay iff r(I) <= 1",
    "R4": "minimal mixed multiplicity (dim >= 2): F(I) Cohen-Macaulay implies G(I) and R(I) Cohen-Macaulay",
    "R5": "minimal mixed multiplicity: depth G(I) >= d-1 implies depth F(I) >= d-1",
    "R6": "minimal mixed multiplicity, dimension 2: depth F(I) >= 1 implies depth G(I) >= 1",
    "R7": "contracted ideal in dimension 2: depth R(I) - 1 = depth G(I) = depth F(I)",
    "VV": "Valabrega-Valla equalities relative to a certified minimal reduction decide Cohen-Macaulayness of G(I)",
    "FCM": "minimal mixed multiplicity: F(I) Cohen-Macaulay iff r(I) <= 1",
    "DEF": "0 <= depth <= dim, and depth = dim exactly for Cohen-Macaulay",
}


class InconsistentDepthFacts(RuntimeError):
    """The rule engine derived an empty depth interval; the input facts are
    contradictory (an engine bug or an unverified assumption)."""


@dataclass(frozen=True)
class DepthFacts:
    """Exact diagnostics feeding the rule engine; None means unknown."""

    dim: int
    complete: bool | None = None
    contracted: bool | None = None
    mmm: bool | None = None
    reduction_number: int | None = None
    reduction_minimal: bool | None = None
    vv_all_pass: bool | None = None


@dataclass(frozen=True)
class RuleFiring:
    rule: str
    statement: str
    effect: str


@dataclass(frozen=True)
class AlgebraVerdict:
    name: str
    dim: int
    lo: int
    hi: int
    cm: str  # "yes" | "no" | "unknown"

    @property
    def exact(self) -> int | None:
        return self.lo if self.lo == self.hi else None


@dataclass(frozen=True)
class DepthVerdict:
    rees: AlgebraVerdict
    graded: AlgebraVerdict
    fiber: AlgebraVerdict
    chain: tuple
    facts: DepthFacts

    def algebra(self, name: str) -> AlgebraVerdict:
        return {"R": self.rees, "G": self.graded, "F": self.fiber}[name]


class _State:
    def __init__(self, facts: DepthFacts):
        d = facts.dim
        self.facts = facts
        self.dim = {"R": d + 1, "G": d, "F": d}
        self.lo = {"R": 0, "G": 0, "F": 0}
        self.hi = {"R": d + 1, "G": d, "F": d}
        self.cm = {"R": None, "G": None, "F": None}
        self.chain: list[RuleFiring] = []
        self.changed = False

    def _fire(self, rule: str, effect: str):
        self.chain.append(RuleFiring(rule, RULES[rule], effect))
        self.changed = True

    def raise_lo(self, name: str, value: int, rule: str):
        if value > self.lo[name]:
            self.lo[name] = value
            self._fire(rule, "depth %s >= %d" % (name, value))
            self._check(name, rule)

    def lower_hi(self, name: str, value: int, rule: str):
        if value < self.hi[name]:
            self.hi[name] = value
            self._fire(rule, "depth %s <= %d" % (name, value))
            self._check(name, rule)

    def set_cm(self, name: str, flag: bool, rule: str):
        cur = self.cm[name]
        if cur is not None:
            if cur != flag:
                raise InconsistentDepthFacts(self._dump("%s CM both yes and no (rule %s)" % (name, rule)))
            return
        self.cm[name] = flag
        self._fire(rule, "%s %s Cohen-Macaulay" % (name, "is" if flag else "is not"))
        if flag:
            self.raise_lo(name, self.dim[name], rule)
        else:
            self.lower_hi(name, self.dim[name] - 1, rule)

    def _check(self, name: str, rule: str):
        if self.lo[name] > self.hi[name]:
            raise InconsistentDepthFacts(
                self._dump("empty interval for %s after rule %s" % (name, rule))
            )

    def _dump(self, reason: str) -> str:
        lines = ["depth inference contradiction: %s" % reason, "facts: %r" % (self.facts,)]
        for name in ("R", "G", "F"):
            lines.append(
                "  %s: depth in [%d, %d], cm=%s" % (name, self.lo[name], self.hi[name], self.cm[name])
            )
        lines.extend("  %s: %s" % (f.rule, f.effect) for f in self.chain)
        return "\n".join(lines)


def depth_infer(facts: DepthFacts) -> DepthVerdict:
    """Run the rules to a fixed point and return the certified verdict."""
    st = _State(facts)
    d = facts.dim
    r = facts.reduction_number

    for _ in range(64):
        st.changed = False

        # Cohen-Macaulayness feeds from the exact diagnostics
        if facts.vv_all_pass is True:
            st.set_cm("G", True, "VV")
        elif facts.vv_all_pass is False:
            st.set_cm("G", False, "VV")
        if facts.mmm and r is not None:
            st.set_cm("F", r <= 1, "FCM")

        # R0: complete in dimension 2
        if d == 2 and facts.complete:
            for name in ("R", "G", "F"):
                st.set_cm(name, True, "R0")

        # R1: depth R = depth G + 1 (interval and CM coupling)
        st.raise_lo("R", st.lo["G"] + 1, "R1")
        st.lower_hi("R", st.hi["G"] + 1, "R1")
        st.raise_lo("G", st.lo["R"] - 1, "R1")
        st.lower_hi("G", st.hi["R"] - 1, "R1")
        if st.cm["G"] is not None:
            st.set_cm("R", st.cm["G"], "R1")
        if st.cm["R"] is not None:
            st.set_cm("G", st.cm["R"], "R1")

        # R2: dimension 2, R CM forces G and F CM
        if d == 2 and st.cm["R"] is True:
            st.set_cm("G", True, "R2")
            st.set_cm("F", True, "R2")

        # R3: contracted in dimension 2 ties F, G, and r(I) <= 1 together
        if d == 2 and facts.contracted:
            if r is not None:
                st.set_cm("F", r <= 1, "R3")
                st.set_cm("G", r <= 1, "R3")
            if st.cm["F"] is not None:
                st.set_cm("G", st.cm["F"], "R3")
            if st.cm["G"] is not None:
                st.set_cm("F", st.cm["G"], "R3")

        # R4: mmm and F CM force G (hence R) CM
        if d >= 2 and facts.mmm and st.cm["F"] is True:
            st.set_cm("G", True, "R4")
            st.set_cm("R", True, "R4")

        # R5: mmm pushes almost-maximal depth from G to F
        if facts.mmm and st.lo["G"] >= d - 1:
            st.raise_lo("F", d - 1, "R5")

        # R6: mmm in dimension 2 pushes positive depth from F to G
        if d == 2 and facts.mmm and st.lo["F"] >= 1:
            st.raise_lo("G", 1, "R6")

        # R7: contracted in dimension 2 locks depth G = depth F
        if d == 2 and facts.contracted:
            st.raise_lo("G", st.lo["F"], "R7")
            st.raise_lo("F", st.lo["G"], "R7")
            st.lower_hi("G", st.hi["F"], "R7")
            st.lower_hi("F", st.hi["G"], "R7")

        # definition: depth = dim iff Cohen-Macaulay
        for name in ("R", "G", "F"):
            if st.lo[name] == st.dim[name] and st.cm[name] is None:
                st.set_cm(name, True, "DEF")
            if st.hi[name] < st.dim[name] and st.cm[name] is None:
                st.set_cm(name, False, "DEF")

        if not st.changed:
            break
    else:
        raise InconsistentDepthFacts(st._dump("no fixed point after 64 sweeps"))

    def verdict(name: str, label: str) -> AlgebraVerdict:
        cm = {True: "yes", False: "no", None: "unknown"}[st.cm[name]]
        return AlgebraVerdict(label, st.dim[name], st.lo[name], st.hi[name], cm)

    return DepthVerdict(
        rees=verdict("R", "R(I)"),
        graded=verdict("G", "G(I)"),
        fiber=verdict("F", "F(I)"),
        chain=tuple(st.chain),
        facts=facts,
    )
