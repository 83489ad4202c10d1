"""Line-oriented ideal spec files.

Format (UTF-8, one declaration per line; blank lines and '#' comments allowed):

    ring X, Y, Z over QQ            # or: over GF(32003)
    ideal I = Y^3, X^4*Y^2, Z^7     # expressions in the polynomial grammar
    ideal J = X^7 + Z^7, X^2*Z, Y^3 # optional; searched for when absent
    set order=grevlex nmax_reduction=6 nmax_vv=auto mode=exact

Recognized set keys: order (grevlex|lex), mode (exact|modular),
nmax_reduction, nmax_vv (int or auto), nmax_joint, nmax_colon, fiber_n
(int or auto), timeout (seconds, int).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_RING_RE = re.compile(r"ring\s+(?P<vars>[^#]+?)\s+over\s+(?P<field>QQ|GF\(\s*\d+\s*\))\s*\Z")
_IDEAL_RE = re.compile(r"ideal\s+(?P<name>[A-Za-z][A-Za-z0-9_]*)\s*=\s*(?P<body>.+)\Z")

_INT_KEYS = ("nmax_reduction", "nmax_joint", "nmax_colon", "timeout")
_AUTO_INT_KEYS = ("nmax_vv", "fiber_n")


class SpecFileError(ValueError):
    """Malformed spec file; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__("line %d: %s" % (line, message))
        self.line = line


@dataclass
class IdealSpec:
    variables: tuple
    field: str  # "QQ" or "GF(p)"
    ideal_gens: tuple = ()
    reduction_gens: tuple | None = None
    options: dict = field(default_factory=dict)


def parse_spec_text(text: str) -> IdealSpec:
    from .parse import split_poly_list

    spec: IdealSpec | None = None
    ideals: dict = {}
    options: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring"):
            if spec is not None:
                raise SpecFileError("duplicate ring declaration", lineno)
            m = _RING_RE.match(line)
            if not m:
                raise SpecFileError("bad ring declaration %r" % line, lineno)
            variables = tuple(v.strip() for v in m.group("vars").split(","))
            if any(not v for v in variables):
                raise SpecFileError("empty variable name", lineno)
            spec = IdealSpec(variables, m.group("field").replace(" ", ""))
        elif line.startswith("ideal"):
            m = _IDEAL_RE.match(line)
            if not m:
                raise SpecFileError("bad ideal declaration %r" % line, lineno)
            name = m.group("name")
            if name in ideals:
                raise SpecFileError("duplicate ideal %r" % name, lineno)
            try:
                parts = split_poly_list(m.group("body"))
            except ValueError as exc:
                raise SpecFileError(str(exc), lineno) from None
            if any(not p for p in parts):
                raise SpecFileError("empty generator in ideal %r" % name, lineno)
            ideals[name] = tuple(parts)
        elif line.startswith("set"):
            for item in line[3:].split():
                if "=" not in item:
                    raise SpecFileError("bad option %r (expected key=value)" % item, lineno)
                key, value = item.split("=", 1)
                options[key] = _parse_option(key, value, lineno)
        else:
            raise SpecFileError("unrecognized declaration %r" % line, lineno)
    if spec is None:
        raise SpecFileError("missing ring declaration", 1)
    if "I" not in ideals:
        raise SpecFileError("missing required ideal I", 1)
    unknown = sorted(set(ideals) - {"I", "J"})
    if unknown:
        raise SpecFileError("unsupported ideal names: %s" % ", ".join(unknown), 1)
    spec.ideal_gens = ideals["I"]
    spec.reduction_gens = ideals.get("J")
    spec.options = options
    return spec


def _parse_option(key: str, value: str, lineno: int):
    if key == "order":
        if value not in ("grevlex", "lex"):
            raise SpecFileError("order must be grevlex or lex", lineno)
        return value
    if key == "mode":
        if value not in ("exact", "modular"):
            raise SpecFileError("mode must be exact or modular", lineno)
        return value
    if key in _INT_KEYS:
        if not value.isdigit():
            raise SpecFileError("%s expects an integer" % key, lineno)
        return int(value)
    if key in _AUTO_INT_KEYS:
        if value == "auto":
            return None
        if not value.isdigit():
            raise SpecFileError("%s expects an integer or auto" % key, lineno)
        return int(value)
    raise SpecFileError("unknown option %r" % key, lineno)


def parse_spec_file(path: str) -> IdealSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec_text(fh.read())
