"""Command-line interface.

    blowup analyze SPECFILE [--json PATH] [--order ...] [--mode ...] [...]
    blowup examples {ex1,ex2} [--params 2-4] [--jobs N] [--json PATH]

Exit codes: 0 success, 1 file or parse errors, 2 precondition failures (e.g.
the ideal is not m-primary at the origin), 3 bound exhaustion or timeout,
4 example-family mismatch against the expected closed forms.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import families
from .ideals import GroebnerTimeout
from .invariants import FitError, StabilizationError
from .monomials import NotOriginPrimary
from .parse import ParseError
from .reductions import ReductionNotCertified
from .report import (
    AnalyzeOptions,
    BoundExhausted,
    PreconditionError,
    analyze_spec,
    to_json_text,
)
from .rings import RingMismatch
from .specfile import IdealSpec, SpecFileError, parse_spec_file

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_BOUNDS = 3
EXIT_MISMATCH = 4


def _add_engine_flags(p: argparse.ArgumentParser):
    p.add_argument("--json", metavar="PATH", help="write the machine-readable report ('-' for stdout)")
    p.add_argument("--order", choices=("grevlex", "lex"), help="monomial order")
    p.add_argument("--mode", choices=("exact", "modular"), help="coefficient mode")
    p.add_argument("--nmax-reduction", type=int, dest="nmax_reduction")
    p.add_argument("--nmax-vv", dest="nmax_vv", help="integer or 'auto'")
    p.add_argument("--nmax-joint", type=int, dest="nmax_joint")
    p.add_argument("--nmax-colon", type=int, dest="nmax_colon")
    p.add_argument("--fiber-n", dest="fiber_n", help="integer or 'auto'")
    p.add_argument("--timeout", type=float, help="per-Groebner-call watchdog in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blowup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one ideal spec file")
    pa.add_argument("specfile")
    _add_engine_flags(pa)

    pe = sub.add_parser("examples", help="run a built-in family against its closed forms")
    pe.add_argument("family", choices=families.FAMILIES)
    pe.add_argument("--params", help="parameter list like '2,3,4' or range like '2-4'")
    pe.add_argument("--jobs", type=int, default=1, help="parallel members (default 1)")
    _add_engine_flags(pe)

    return parser


def _options_from_args(args, base: dict | None = None) -> AnalyzeOptions:
    mapping = dict(base or {})
    for key in ("order", "mode", "nmax_reduction", "nmax_joint", "nmax_colon"):
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    for key in ("nmax_vv", "fiber_n"):
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = None if value == "auto" else int(value)
    if getattr(args, "timeout", None) is not None:
        mapping["timeout"] = args.timeout
    return AnalyzeOptions.from_mapping(mapping)


def _emit_json(args, payload: str) -> None:
    if args.json == "-":
        sys.stdout.write(payload)
    elif args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(payload)


def cmd_analyze(args) -> int:
    try:
        spec = parse_spec_file(args.specfile)
        options = _options_from_args(args, spec.options)
        result = analyze_spec(spec, options)
    except (OSError, SpecFileError, ParseError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            print("precondition failure: %s" % exc, file=sys.stderr)
            return EXIT_PRECONDITION
        if isinstance(exc, (NotOriginPrimary, RingMismatch)):
            print("precondition failure: %s" % exc, file=sys.stderr)
            return EXIT_PRECONDITION
        if isinstance(exc, (FitError, StabilizationError)):
            print("bound exhausted: %s" % exc, file=sys.stderr)
            return EXIT_BOUNDS
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (BoundExhausted, GroebnerTimeout, ReductionNotCertified) as exc:
        print("bound exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BOUNDS
    sys.stdout.write(result.text)
    print("elapsed: %.2f s" % result.seconds, file=sys.stderr)
    _emit_json(args, to_json_text(result.data))
    return EXIT_OK


def _parse_params(spec: str | None, family: str) -> list[int]:
    if spec is None:
        return list(families.DEFAULT_PARAMS[family])
    spec = spec.strip()
    if "-" in spec and "," not in spec:
        lo, hi = spec.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",") if x.strip()]


def _member_spec(member: families.FamilyMember) -> IdealSpec:
    return IdealSpec(
        variables=member.variables,
        field="QQ",
        ideal_gens=member.ideal_gens,
        reduction_gens=member.reduction_gens,
    )


def run_member(family: str, parameter: int, option_mapping: dict) -> dict:
    """Analyze one family member and compare against its closed forms."""
    member = families.member(family, parameter)
    options = AnalyzeOptions.from_mapping(option_mapping)
    result = analyze_spec(_member_spec(member), options)
    data = result.data
    diffs = families.compare_expected(member.expected, data)
    checks = []
    for label, got, want in families.witness_checks(member):
        checks.append({"check": label, "value": got, "expected": want})
        if got != want:
            diffs.append("witness %s: expected %r, got %r" % (label, want, got))
    return {
        "parameter": parameter,
        "report": data,
        "diffs": diffs,
        "witness_checks": checks,
        "pass": not diffs,
    }


def cmd_examples(args) -> int:
    try:
        params = _parse_params(args.params, args.family)
        members = [families.member(args.family, p) for p in params]
    except ValueError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    option_mapping: dict = {}
    dummy = argparse.Namespace(**vars(args))
    options = _options_from_args(dummy)
    for key, value in vars(options).items():
        option_mapping[key] = value

    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                futures = [
                    pool.submit(run_member, args.family, m.parameter, option_mapping)
                    for m in members
                ]
                rows = [f.result() for f in futures]
        else:
            rows = [run_member(args.family, m.parameter, option_mapping) for m in members]
    except (BoundExhausted, GroebnerTimeout, ReductionNotCertified, FitError, StabilizationError) as exc:
        print("bound exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BOUNDS
    except (PreconditionError, NotOriginPrimary) as exc:
        print("precondition failure: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION

    passed = sum(1 for row in rows if row["pass"])
    for row in rows:
        status = "pass" if row["pass"] else "FAIL"
        print("%s %s=%d: %s" % (args.family, _param_name(args.family), row["parameter"], status))
        for diff in row["diffs"]:
            print("    %s" % diff)
    print("%d/%d pass" % (passed, len(rows)))
    payload = {
        "family": args.family,
        "members": rows,
        "pass": passed == len(rows),
    }
    _emit_json(args, to_json_text(payload))
    return EXIT_OK if passed == len(rows) else EXIT_MISMATCH


def _param_name(family: str) -> str:
    return "s" if family == "ex1" else "n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_examples(args)


if __name__ == "__main__":
    sys.exit(main())
