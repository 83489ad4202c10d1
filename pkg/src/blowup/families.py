"""The two built-in ideal families used by the example harness, with their
closed-form expected diagnostics.

Family ex1 (parameter s >= 2) lives in QQ[X, Y, Z]:

    I_s = (Y^3, X^{s+1}Y^2, XY^2Z, Y^2Z^3, X^{2s+1}Y, XYZ^2, YZ^5,
           X^{3s+1}, X^2Z, XZ^4, Z^7),     J = (X^{3s+1} + Z^7, X^2Z, Y^3)

with mu = 11, e_2(m|I) = 9, minimal mixed multiplicity, a certified reduction
number 2, all Valabrega-Valla equalities, complete integral closure, fiber
numerator (1, 8), and depth F(I) = 2 with F(I) not Cohen-Macaulay.

Family ex2 (parameter n >= 4) lives in QQ[X, Y]:

    I_n = (X^n, X^2 Y^{n-2}, X Y^{n-1}, Y^n),   J = (X^n, Y^n)

with reduction number floor(n/2), the witness X^{n-1} Y^{n(r-1)+1} inside I^r
but outside J I^{r-1}, Valabrega-Valla failing at n = 2 with witness
X^3 Y^{2n-3}, fiber numerator (1, 2, ..., 2) for odd n and (1, 2, ..., 2, 1)
for even n, and I_n not contracted.
"""

from __future__ import annotations

from dataclasses import dataclass

FAMILIES = ("ex1", "ex2")

DEFAULT_PARAMS = {"ex1": (2, 3, 4), "ex2": (4, 5, 6, 7)}


@dataclass(frozen=True)
class FamilyMember:
    family: str
    parameter: int
    variables: tuple
    ideal_gens: tuple
    reduction_gens: tuple
    expected: dict


def member(family: str, parameter: int) -> FamilyMember:
    if family == "ex1":
        return _ex1(parameter)
    if family == "ex2":
        return _ex2(parameter)
    raise ValueError("unknown family %r (choose from %s)" % (family, ", ".join(FAMILIES)))


def _ex1(s: int) -> FamilyMember:
    if s < 2:
        raise ValueError("family ex1 requires s >= 2, got %d" % s)
    gens = (
        "Y^3",
        "X^%d*Y^2" % (s + 1),
        "X*Y^2*Z",
        "Y^2*Z^3",
        "X^%d*Y" % (2 * s + 1),
        "X*Y*Z^2",
        "Y*Z^5",
        "X^%d" % (3 * s + 1),
        "X^2*Z",
        "X*Z^4",
        "Z^7",
    )
    J = ("X^%d + Z^7" % (3 * s + 1), "X^2*Z", "Y^3")
    expected = {
        "invariants": {"mu": "11"},
        "bhattacharya": {"e_2": "9"},
        "mmm": {"value": True},
        "reduction": {"r": 2, "minimal": True},
        "vv": {"all_pass": True},
        "complete": {"value": True},
        "fiber": {"numerator": ["1", "8"]},
        "depth": {
            "G(I)": {"cm": "yes"},
            "R(I)": {"cm": "yes"},
            "F(I)": {"lo": 2, "hi": 2, "cm": "no"},
        },
    }
    return FamilyMember("ex1", s, ("X", "Y", "Z"), gens, J, expected)


def _ex2(n: int) -> FamilyMember:
    if n < 4:
        raise ValueError("family ex2 requires n >= 4, got %d" % n)
    r = n // 2
    if n % 2 == 1:
        numerator = ["1"] + ["2"] * r
    else:
        numerator = ["1"] + ["2"] * (r - 1) + ["1"]
    gens = ("X^%d" % n, "X^2*Y^%d" % (n - 2), "X*Y^%d" % (n - 1), "Y^%d" % n)
    J = ("X^%d" % n, "Y^%d" % n)
    expected = {
        "invariants": {"mu": "4"},
        "reduction": {"r": r, "minimal": True},
        "vv": {"all_pass": False, "first_failure": 2, "witness": "X^3*Y^%d" % (2 * n - 3)},
        "contracted": {"value": False},
        "mmm": {"value": False},
        "fiber": {"numerator": numerator},
        "depth": {
            "G(I)": {"lo": 0, "hi": 1, "cm": "no"},
            "R(I)": {"lo": 1, "hi": 2, "cm": "no"},
            "F(I)": {"cm": "unknown"},
        },
    }
    return FamilyMember("ex2", n, ("X", "Y"), gens, J, expected)


def witness_checks(m: FamilyMember) -> list:
    """Extra per-member identities checked outside the standard report.

    For ex2 this is the membership pair: X^{n-1} Y^{n(r-1)+1} lies in I^r but
    not in J I^{r-1}."""
    checks = []
    if m.family == "ex2":
        from .ideals import IdealHandle
        from .parse import parse_poly
        from .rings import RingSpec

        ring = RingSpec(m.variables)
        n, r = m.parameter, m.parameter // 2
        I = IdealHandle(ring, [parse_poly(t, ring) for t in m.ideal_gens])
        J = IdealHandle(ring, [parse_poly(t, ring) for t in m.reduction_gens])
        w = parse_poly("X^%d*Y^%d" % (n - 1, n * (r - 1) + 1), ring)
        in_ir = I.power(r).contains_poly(w)
        in_jir = J.product(I.power(r - 1)).contains_poly(w)
        checks.append(("witness in I^r", in_ir, True))
        checks.append(("witness in J*I^(r-1)", in_jir, False))
    return checks


def compare_expected(expected: dict, actual: dict, path: str = "") -> list:
    """Recursive subset comparison; returns human-readable diff lines."""
    diffs = []
    for key, want in expected.items():
        where = "%s.%s" % (path, key) if path else key
        if not isinstance(actual, dict) or key not in actual or actual is None:
            diffs.append("%s: missing (expected %r)" % (where, want))
            continue
        got = actual[key]
        if isinstance(want, dict):
            if not isinstance(got, dict):
                diffs.append("%s: expected mapping, got %r" % (where, got))
            else:
                diffs.extend(compare_expected(want, got, where))
        elif got != want:
            diffs.append("%s: expected %r, got %r" % (where, want, got))
    return diffs
