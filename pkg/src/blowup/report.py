"""The analysis pipeline: compute every diagnostic for one ideal and render
deterministic machine-readable (JSON) and human reports.

The JSON document is a stable schema (documented in the README); exact numbers
are decimal strings.  The human report is a pure function of the JSON data, so
re-reading machine output and re-rendering reproduces the text byte for byte.
Timing is kept out of both renderings (the CLI prints it to stderr) so that
repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import depth as depth_mod
from . import invariants as inv
from . import reductions as red
from .exact import DEFAULT_PRIME, PrimeField, QQ
from .ideals import IdealHandle, default_order, set_default_order, set_groebner_time_limit
from .invariants import FitError, StabilizationError, monomial_twin
from .parse import ParseError, parse_poly
from .rings import ORDERS_BY_NAME, RingSpec
from .specfile import IdealSpec

ENGINE_VERSION = "0.1.0"


class PreconditionError(ValueError):
    """Input violates an analysis precondition (CLI exit code 2)."""


class BoundExhausted(RuntimeError):
    """A search or stabilization bound ran out (CLI exit code 3)."""


@dataclass
class AnalyzeOptions:
    order: str = "grevlex"
    mode: str = "exact"
    nmax_reduction: int = 6
    nmax_vv: int | None = None  # None: r + 2
    nmax_joint: int = 4
    nmax_colon: int = 5
    fiber_n: int | None = None  # None: automatic
    h1_levels: int = 4
    reduction_attempts: int = 24
    timeout: float | None = None

    @classmethod
    def from_mapping(cls, mapping: dict) -> "AnalyzeOptions":
        opts = cls()
        for key, value in mapping.items():
            if not hasattr(opts, key):
                raise ValueError("unknown option %r" % key)
            setattr(opts, key, value)
        return opts


@dataclass
class AnalysisResult:
    data: dict
    text: str
    seconds: float


def ring_from_spec(spec: IdealSpec, options: AnalyzeOptions) -> RingSpec:
    if options.mode == "modular":
        p = DEFAULT_PRIME
        if spec.field.startswith("GF("):
            p = int(spec.field[3:-1])
        return RingSpec(spec.variables, PrimeField(p))
    if spec.field == "QQ":
        return RingSpec(spec.variables, QQ)
    return RingSpec(spec.variables, PrimeField(int(spec.field[3:-1])))


def analyze_spec(spec: IdealSpec, options: AnalyzeOptions | None = None) -> AnalysisResult:
    options = options or AnalyzeOptions.from_mapping(spec.options)
    ring = ring_from_spec(spec, options)
    try:
        gens = [parse_poly(t, ring) for t in spec.ideal_gens]
        jgens = (
            [parse_poly(t, ring) for t in spec.reduction_gens]
            if spec.reduction_gens is not None
            else None
        )
    except ParseError:
        raise
    return analyze(ring, gens, jgens, options)


def analyze(ring, gens, reduction_gens, options: AnalyzeOptions) -> AnalysisResult:
    started = time.monotonic()
    previous_order = default_order()
    set_default_order(ORDERS_BY_NAME[options.order])
    if options.timeout is not None:
        set_groebner_time_limit(options.timeout)
    try:
        data = _analyze_data(ring, gens, reduction_gens, options)
    finally:
        set_default_order(previous_order)
        if options.timeout is not None:
            set_groebner_time_limit(None)
    return AnalysisResult(data, render_text(data), time.monotonic() - started)


def _analyze_data(ring, gens, reduction_gens, options: AnalyzeOptions) -> dict:
    d = ring.dim
    I = IdealHandle(ring, gens)
    if not I.is_origin_primary():
        raise PreconditionError("ideal I is not m-primary at origin")
    monomial = I.is_monomial()
    method = "monomial-path" if monomial else "groebner-path"
    notes = []
    if options.mode == "modular":
        notes.append("modular mode: verdicts computed over %s -- confirm over QQ" % ring.coeff_field)

    data: dict = {
        "engine": {
            "name": "blowup",
            "version": ENGINE_VERSION,
            "mode": options.mode,
            "order": options.order,
        },
        "ring": {"variables": list(ring.variables), "field": str(ring.coeff_field)},
        "ideal": {
            "generators": [str(g) for g in I.gens],
            "origin_primary": True,
            "monomial": monomial,
        },
    }

    data["invariants"] = {
        "mu": str(inv.mu(I)),
        "order": str(inv.adic_order(I)),
        "length": str(inv.length(I)),
        "method": method,
    }

    twin = monomial_twin(I)
    if twin is not None:
        data["complete"] = {"value": twin.is_complete(), "method": "newton-polyhedron"}
    else:
        data["complete"] = {"value": None, "method": "not-computed (non-monomial input)"}

    if d == 2:
        ct = red.contracted_check_2d(I)
        data["contracted"] = {"value": ct.is_contracted, "mu": str(ct.mu), "order": str(ct.order)}
    else:
        data["contracted"] = None

    # reduction certificate
    cert = None
    if reduction_gens is not None:
        J = IdealHandle(ring, reduction_gens)
        try:
            cert = red.reduction_number(I, J, options.nmax_reduction)
        except red.ReductionNotCertified as exc:
            raise BoundExhausted(str(exc)) from None
        except ValueError as exc:
            raise PreconditionError(str(exc)) from None
    else:
        cert = red.find_minimal_reduction(
            I, attempts=options.reduction_attempts, n_max=options.nmax_reduction
        )
    if cert is not None:
        data["reduction"] = {
            "generators": [str(g) for g in cert.J.gens],
            "r": cert.r,
            "n_verified": cert.n_verified,
            "minimal": cert.minimal,
            "supplied": reduction_gens is not None,
        }
    else:
        data["reduction"] = None
        notes.append("no minimal reduction certified within the search bounds")

    # Valabrega-Valla
    vv = None
    if cert is not None:
        vv = red.vv_check(cert, options.nmax_vv)
        data["vv"] = {
            "per_n": [[n, ok] for n, ok in vv.per_n],
            "all_pass": vv.all_pass,
            "first_failure": vv.first_failure,
            "witness": str(vv.witness) if vv.witness is not None else None,
            "note": vv.note,
        }
    else:
        data["vv"] = None

    # Bhattacharya fit and mixed multiplicities
    start = max(cert.r if cert is not None else 0, d) + 1
    try:
        form, table = inv.bhattacharya_fit_search(I, start=start)
    except FitError as exc:
        raise BoundExhausted(str(exc)) from None
    data["bhattacharya"] = {
        "coefficients": {"%d,%d" % ij: str(c) for ij, c in form.e},
        "mixed": [str(form.mixed(j)) for j in range(d + 1)],
        "e_%d" % (d - 1): str(form.mixed(d - 1)),
        "e_%d" % d: str(form.mixed(d)),
        "window": {"r0": table.r0, "s0": table.s0, "width": table.width},
        "method": "fit",
    }

    mm = red.mmm_check(I, fit=form, reduction=cert, n_max_joint=options.nmax_joint)
    jr = mm.joint_reduction
    data["mmm"] = {
        "value": mm.is_mmm,
        "mu": str(mm.mu),
        "e_top": str(mm.e_top),
        "identity": mm.identity_holds,
        "joint_reduction": (
            {"x": str(jr.x), "a": [str(a) for a in jr.a], "n": jr.n} if jr is not None else None
        ),
    }

    # fiber-cone Hilbert numerator
    N = options.fiber_n
    if N is None:
        N = max(2 * d + 2, (cert.r if cert is not None else d) + d + 3)
    try:
        try:
            hn = inv.fiber_hilbert(I, N)
        except StabilizationError:
            hn = inv.fiber_hilbert(I, N + 6)
    except StabilizationError as exc:
        raise BoundExhausted(str(exc)) from None
    data["fiber"] = {
        "numerator": [str(c) for c in hn.coefficients],
        "denominator_power": hn.d,
        "mu_sequence": [str(c) for c in hn.mu_sequence],
    }

    # H1 vanishing levels
    if jr is not None:
        h1 = []
        for n in range(1, options.h1_levels + 1):
            h = red.h1_vanishing_check(I, jr.x, list(jr.a), n)
            h1.append(
                {
                    "n": n,
                    "vanishes": h.vanishes,
                    "witness": str(h.witness) if h.witness is not None else None,
                    "identity_linear": h.identity_linear,
                    "identity_powered": h.identity_powered,
                }
            )
        data["h1"] = h1
    else:
        data["h1"] = None

    # colon powers for the first joint-reduction element
    if jr is not None:
        cp = red.colon_power_check(I, jr.a[0], options.nmax_colon)
        data["colon_power"] = {
            "element": str(jr.a[0]),
            "per_n": [[n, ok] for n, ok in cp.per_n],
            "all_pass": cp.all_pass,
            "first_failure": cp.first_failure,
        }
    else:
        data["colon_power"] = None

    facts = depth_mod.DepthFacts(
        dim=d,
        complete=data["complete"]["value"],
        contracted=data["contracted"]["value"] if data["contracted"] else None,
        mmm=mm.is_mmm,
        reduction_number=cert.r if cert is not None and cert.minimal else None,
        reduction_minimal=cert.minimal if cert is not None else None,
        vv_all_pass=vv.all_pass if vv is not None else None,
    )
    verdict = depth_mod.depth_infer(facts)
    data["depth"] = {
        verdict.rees.name: _algebra_dict(verdict.rees),
        verdict.graded.name: _algebra_dict(verdict.graded),
        verdict.fiber.name: _algebra_dict(verdict.fiber),
        "rules": [
            {"rule": f.rule, "statement": f.statement, "effect": f.effect} for f in verdict.chain
        ],
    }
    data["notes"] = notes
    return data


def _algebra_dict(v) -> dict:
    return {"dim": v.dim, "lo": v.lo, "hi": v.hi, "cm": v.cm}


def to_json_text(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def from_json_text(text: str) -> dict:
    return json.loads(text)


def render_text(data: dict) -> str:
    """Human report, a pure function of the machine-readable data."""
    lines = []
    eng = data["engine"]
    lines.append("blowup %s  (mode=%s, order=%s)" % (eng["version"], eng["mode"], eng["order"]))
    ring = data["ring"]
    lines.append("ring: %s[%s]" % (ring["field"], ", ".join(ring["variables"])))
    ideal = data["ideal"]
    lines.append("ideal I: %s" % ", ".join(ideal["generators"]))
    invs = data["invariants"]
    lines.append(
        "invariants (%s): mu = %s, order = %s, length = %s"
        % (invs["method"], invs["mu"], invs["order"], invs["length"])
    )
    comp = data["complete"]
    lines.append(
        "complete: %s  [%s]"
        % ("yes" if comp["value"] else "unknown" if comp["value"] is None else "no", comp["method"])
    )
    if data["contracted"] is not None:
        ct = data["contracted"]
        lines.append(
            "contracted: %s  (mu = %s, order = %s)"
            % ("yes" if ct["value"] else "no", ct["mu"], ct["order"])
        )
    bh = data["bhattacharya"]
    lines.append(
        "mixed multiplicities e_0..e_%d: %s  (window origin %d, width %d)"
        % (
            len(bh["mixed"]) - 1,
            ", ".join(bh["mixed"]),
            bh["window"]["r0"],
            bh["window"]["width"],
        )
    )
    mm = data["mmm"]
    d = len(bh["mixed"]) - 1
    lines.append(
        "minimal mixed multiplicity: %s  (mu = %s vs e_top + d - 1 = %d)"
        % ("yes" if mm["value"] else "no", mm["mu"], int(mm["e_top"]) + d - 1)
    )
    if mm["joint_reduction"] is not None:
        jr = mm["joint_reduction"]
        lines.append(
            "  joint reduction (x; a): (%s; %s) verified at n = %d, identity %s"
            % (
                jr["x"],
                ", ".join(jr["a"]),
                jr["n"],
                {True: "holds", False: "fails", None: "not checked"}[mm["identity"]],
            )
        )
    if data["reduction"] is not None:
        rd = data["reduction"]
        lines.append(
            "reduction J = (%s): r = %d, minimal: %s, %s"
            % (
                ", ".join(rd["generators"]),
                rd["r"],
                "yes" if rd["minimal"] else "no",
                "supplied" if rd["supplied"] else "found by search",
            )
        )
    else:
        lines.append("reduction: none certified")
    if data["vv"] is not None:
        vv = data["vv"]
        status = "pass" if vv["all_pass"] else "FAIL at n = %d" % vv["first_failure"]
        lines.append(
            "valabrega-valla: %s  [%s]%s"
            % (
                status,
                vv["note"],
                "" if vv["witness"] is None else "  witness: %s" % vv["witness"],
            )
        )
    fib = data["fiber"]
    lines.append(
        "fiber numerator: (%s) / (1-t)^%d"
        % (", ".join(fib["numerator"]), fib["denominator_power"])
    )
    if data["h1"] is not None:
        flags = ["n=%d:%s" % (h["n"], "0" if h["vanishes"] else "nonzero") for h in data["h1"]]
        lines.append("h1 obstructions: %s" % "  ".join(flags))
    if data["colon_power"] is not None:
        cp = data["colon_power"]
        status = "pass" if cp["all_pass"] else "fails first at n = %d" % cp["first_failure"]
        lines.append("colon powers ((I^n : %s) = I^(n-1)): %s" % (cp["element"], status))
    lines.append("depth verdict:")
    for name in ("R(I)", "G(I)", "F(I)"):
        v = data["depth"][name]
        span = "= %d" % v["lo"] if v["lo"] == v["hi"] else "in [%d, %d]" % (v["lo"], v["hi"])
        lines.append(
            "  %-5s depth %s (dim %d), Cohen-Macaulay: %s" % (name, span, v["dim"], v["cm"])
        )
    lines.append("rules fired:")
    for f in data["depth"]["rules"]:
        lines.append("  %-4s %s  [%s]" % (f["rule"], f["effect"], f["statement"]))
    for note in data["notes"]:
        lines.append("note: %s" % note)
    return "\n".join(lines) + "\n"
