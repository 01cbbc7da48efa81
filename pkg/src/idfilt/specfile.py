"""Filtration spec files: the text format consumed by the command line.

Line-oriented, # comments, one directive per line:

    field: GF(2) | GF(p^m) | QQ
    vars: x, y, z
    truncation: 10
    boundary: x, y          (optional)
    gen: x^2 + y^3 @ 2      (repeatable; level is a rational)
    candidate: y @ 1        (optional; extra probe candidates)
    radical_n_max: 8        (optional probe bounds)
    radical_grid: 64
    emax: 3                 (optional)

Parsing reports the first error with its line number and a stable code.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .fields import Field, FieldError, field_from_spec
from .poly import Poly, PolyParseError, TruncationContext, parse_poly, poly_str

MAX_VARS = 6
MAX_TRUNC = 16


class SpecError(ValueError):
    def __init__(self, code: str, line: int, message: str):
        super().__init__(f"line {line}: [{code}] {message}")
        self.code = code
        self.line = line


@dataclass
class SpecOptions:
    radical_n_max: int = 8
    radical_grid: int = 64
    emax: int | None = None
    candidates: list = dfield(default_factory=list)  # (Poly, Fraction)

    def to_json(self, names=None):
        return {
            "radical_n_max": self.radical_n_max,
            "radical_grid": self.radical_grid,
            "emax": self.emax,
            "candidates": [{"poly": poly_str(f, names), "level": str(a)}
                           for f, a in self.candidates],
        }


@dataclass
class SpecFile:
    field: Field
    names: list
    D: int
    boundary: list
    gens: list  # (Poly, Fraction)
    options: SpecOptions = dfield(default_factory=SpecOptions)

    def context(self) -> TruncationContext:
        idx = frozenset(self.names.index(b) for b in self.boundary)
        return TruncationContext(self.field, len(self.names), self.D, idx)

    def __eq__(self, other):
        return (isinstance(other, SpecFile)
                and self.field == other.field and self.names == other.names
                and self.D == other.D and self.boundary == other.boundary
                and self.gens == other.gens
                and self.options == other.options)


def _parse_level(text: str):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        return None


def parse_spec(text: str) -> SpecFile:
    field = None
    names = None
    D = None
    boundary = []
    gen_lines = []          # (lineno, poly text, level text)
    candidate_lines = []
    options = SpecOptions()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SpecError("E_PARSE", lineno, f"expected 'key: value', got {line!r}")
        key, val = (s.strip() for s in line.split(":", 1))
        if key == "field":
            try:
                field = field_from_spec(val)
            except FieldError as exc:
                raise SpecError("E_FIELD", lineno, str(exc))
        elif key == "vars":
            names = [v.strip() for v in val.split(",") if v.strip()]
            if not names or len(set(names)) != len(names):
                raise SpecError("E_VAR", lineno, "need distinct variable names")
            if len(names) > MAX_VARS:
                raise SpecError("E_VAR", lineno,
                                f"at most {MAX_VARS} variables are supported")
        elif key == "truncation":
            try:
                D = int(val)
            except ValueError:
                raise SpecError("E_TRUNC", lineno, f"bad truncation degree {val!r}")
        elif key == "boundary":
            boundary = [v.strip() for v in val.split(",") if v.strip()]
        elif key in ("gen", "candidate"):
            if "@" not in val:
                raise SpecError("E_GEN", lineno, "expected '<poly> @ <level>'")
            ptext, ltext = val.rsplit("@", 1)
            (gen_lines if key == "gen" else candidate_lines).append(
                (lineno, ptext.strip(), ltext.strip()))
        elif key == "radical_n_max":
            options.radical_n_max = _expect_pos_int(val, lineno, key)
        elif key == "radical_grid":
            options.radical_grid = _expect_pos_int(val, lineno, key)
        elif key == "emax":
            options.emax = _expect_pos_int(val, lineno, key, allow_zero=True)
        else:
            raise SpecError("E_PARSE", lineno, f"unknown directive {key!r}")

    if field is None:
        raise SpecError("E_FIELD", 0, "missing 'field:' directive")
    if names is None:
        raise SpecError("E_VAR", 0, "missing 'vars:' directive")
    if D is None:
        raise SpecError("E_TRUNC", 0, "missing 'truncation:' directive")
    if not 1 <= D <= MAX_TRUNC:
        raise SpecError("E_TRUNC", 0,
                        f"truncation degree {D} outside supported envelope "
                        f"1..{MAX_TRUNC}")
    for b in boundary:
        if b not in names:
            raise SpecError("E_VAR", 0, f"boundary variable {b!r} not declared")

    def build(lines):
        out = []
        for lineno, ptext, ltext in lines:
            level = _parse_level(ltext)
            if level is None:
                raise SpecError("E_LEVEL", lineno, f"bad rational level {ltext!r}")
            try:
                f = parse_poly(ptext, names, field)
            except PolyParseError as exc:
                raise SpecError("E_POLY", lineno, str(exc))
            out.append((f, level))
        return out

    gens = build(gen_lines)
    options.candidates = build(candidate_lines)
    return SpecFile(field, names, D, boundary, gens, options)


def _expect_pos_int(val, lineno, key, allow_zero=False):
    try:
        n = int(val)
    except ValueError:
        raise SpecError("E_OPTION", lineno, f"bad integer for {key}: {val!r}")
    if n < 0 or (n == 0 and not allow_zero):
        raise SpecError("E_OPTION", lineno, f"{key} must be positive")
    return n


def print_spec(spec: SpecFile) -> str:
    """Canonical text for a spec; parse_spec(print_spec(s)) == s."""
    lines = [
        f"field: {spec.field.spec_str()}",
        f"vars: {', '.join(spec.names)}",
        f"truncation: {spec.D}",
    ]
    if spec.boundary:
        lines.append(f"boundary: {', '.join(spec.boundary)}")
    for f, a in spec.gens:
        lines.append(f"gen: {poly_str(f, spec.names)} @ {a}")
    for f, a in spec.options.candidates:
        lines.append(f"candidate: {poly_str(f, spec.names)} @ {a}")
    opts = spec.options
    if opts.radical_n_max != 8:
        lines.append(f"radical_n_max: {opts.radical_n_max}")
    if opts.radical_grid != 64:
        lines.append(f"radical_grid: {opts.radical_grid}")
    if opts.emax is not None:
        lines.append(f"emax: {opts.emax}")
    return "\n".join(lines) + "\n"
