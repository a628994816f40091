"""Robot description files: parsing, validation, serialization, fixtures.

The format is line-oriented. `#` starts a comment running to end of line,
blank lines are ignored. A file holds two header directives followed by one
line per joint:

    robot "<name>"
    units <m|cm|mm>
    joint <i> type=<revolute|prismatic> a=<num> alpha=<angle> d=<num>
              offset=<angle> min=<angle-or-num> max=<angle-or-num>
              [fixed=<angle-or-num>]

(joint lines are single lines; wrapped above for readability). <num> is a
decimal with optional sign and exponent; <angle> additionally accepts
`pi`, `-pi`, `pi/<int>`, `-pi/<int>`. Angles are radians. Lengths are in
the declared unit and converted to meters at load; for prismatic joints
the limits and fixed value are lengths, so they convert too.

Parsing never raises on bad input: it reports Diagnostics with stable
codes and 1-based line/column positions, and returns a model only when
no error was found.
"""

from __future__ import annotations

import functools
import importlib.resources
import math
import re
from dataclasses import dataclass

from .kinematics import JOINT_KINDS, PRISMATIC, DHRow, RobotModel

UNIT_FACTORS = {"m": 1.0, "cm": 0.01, "mm": 0.001}

ERROR = "error"
WARNING = "warning"

_NUM_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")
_PI_RE = re.compile(r"(-?)pi(?:/(\d+))?\Z")
_TOKEN_RE = re.compile(r"\S+")
_ROBOT_RE = re.compile(r"\s*robot\s+\"([^\"]*)\"\s*\Z")

#: value syntax per joint field: plain number, or number-or-pi-fraction
_FIELD_SYNTAX = {
    "type": "kind",
    "a": "num",
    "alpha": "angle",
    "d": "num",
    "offset": "angle",
    "min": "angle",
    "max": "angle",
    "fixed": "angle",
}
_REQUIRED_FIELDS = ("type", "a", "alpha", "d", "offset", "min", "max")


@dataclass(frozen=True)
class Diagnostic:
    """One parse/validation finding, addressable in the source text."""

    severity: str  # "error" or "warning"
    line: int  # 1-based
    column: int  # 1-based
    message: str
    code: str  # stable identifier, safe to assert on in tests

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message} [{self.code}]"


def _err(line, column, message, code):
    return Diagnostic(ERROR, line, column, message, code)


def _warn(line, column, message, code):
    return Diagnostic(WARNING, line, column, message, code)


def _parse_value(raw: str, allow_pi: bool) -> float | None:
    """Parse a numeric token, optionally accepting pi-fraction forms."""
    if allow_pi:
        m = _PI_RE.match(raw)
        if m:
            value = math.pi / int(m.group(2)) if m.group(2) else math.pi
            return -value if m.group(1) else value
    if _NUM_RE.match(raw):
        value = float(raw)
        if math.isfinite(value):
            return value
    return None


class _JointLine:
    """Raw field values of one joint line, before unit conversion."""

    __slots__ = ("index", "line", "column", "kind", "values", "cols")

    def __init__(self, index, line, column):
        self.index = index
        self.line = line
        self.column = column  # column of the index token
        self.kind = None
        self.values = {}  # field name -> float
        self.cols = {}  # field name -> 1-based column of the token


def parse_robot(source: str):
    """Parse description text into (RobotModel, diagnostics).

    The model is None iff the diagnostics contain at least one error;
    warnings may accompany a successful parse. Diagnostics are sorted by
    position.
    """
    diags = []
    name = None
    units = None
    joints = []
    header_missing_reported = set()

    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(text)]
        if not tokens:
            continue
        word, col = tokens[0]

        if word == "robot":
            if name is not None:
                diags.append(_err(lineno, col, "duplicate 'robot' directive", "duplicate-directive"))
                continue
            m = _ROBOT_RE.match(text)
            if m is None or not m.group(1):
                at = tokens[1][1] if len(tokens) > 1 else col
                diags.append(_err(lineno, at, 'expected: robot "<name>"', "bad-robot-name"))
                name = ""  # header was present, just malformed
            else:
                name = m.group(1)

        elif word == "units":
            if units is not None:
                diags.append(_err(lineno, col, "duplicate 'units' directive", "duplicate-directive"))
                continue
            if len(tokens) != 2 or tokens[1][0] not in UNIT_FACTORS:
                at = tokens[1][1] if len(tokens) > 1 else col
                diags.append(_err(lineno, at, "expected: units <m|cm|mm>", "bad-units"))
                units = "m"  # placeholder; an error is already recorded
            else:
                units = tokens[1][0]

        elif word == "joint":
            if name is None and "robot" not in header_missing_reported:
                header_missing_reported.add("robot")
                diags.append(_err(lineno, col, "joint before 'robot' header", "missing-robot-header"))
            if units is None and "units" not in header_missing_reported:
                header_missing_reported.add("units")
                diags.append(_err(lineno, col, "joint before 'units' header", "missing-units-header"))
            joints.append(_parse_joint_line(tokens, lineno, col, diags))

        else:
            diags.append(_err(lineno, col, f"unknown directive {word!r}", "unknown-directive"))

    if name is None and "robot" not in header_missing_reported:
        diags.append(_err(1, 1, "missing 'robot' header", "missing-robot-header"))
    if units is None and "units" not in header_missing_reported:
        diags.append(_err(1, 1, "missing 'units' header", "missing-units-header"))

    joints = [j for j in joints if j is not None]
    if not joints:
        diags.append(_err(1, 1, "file declares no joints", "no-joints"))
    _check_indices(joints, diags)

    if not any(d.severity == ERROR for d in diags):
        if all(j.values.get("fixed") is not None for j in joints):
            first = joints[0]
            diags.append(_err(first.line, first.column,
                              "every joint is fixed; at least one degree of freedom is required",
                              "all-joints-fixed"))

    if any(d.severity == ERROR for d in diags):
        return None, sorted(diags, key=lambda d: (d.line, d.column, d.code))

    factor = UNIT_FACTORS[units]
    rows = []
    for j in sorted(joints, key=lambda j: j.index):
        v = j.values
        lo, hi, fixed = v["min"], v["max"], v.get("fixed")
        if j.kind == PRISMATIC:
            lo, hi = lo * factor, hi * factor
            if fixed is not None:
                fixed *= factor
        rows.append(DHRow(
            index=j.index,
            kind=j.kind,
            a=v["a"] * factor,
            alpha=v["alpha"],
            d=v["d"] * factor,
            theta_offset=v["offset"],
            limits=(lo, hi),
            fixed=fixed,
        ))
    model = RobotModel(name=name, rows=tuple(rows), source_units=units)
    return model, sorted(diags, key=lambda d: (d.line, d.column, d.code))


def _parse_joint_line(tokens, lineno, col, diags):
    """Parse one `joint ...` line; appends diagnostics, returns a _JointLine
    record (or None when even the index is unusable)."""
    if len(tokens) < 2 or not re.fullmatch(r"\d+", tokens[1][0]) or int(tokens[1][0]) < 1:
        at = tokens[1][1] if len(tokens) > 1 else col
        diags.append(_err(lineno, at, "expected a positive integer joint index", "bad-joint-index"))
        return None
    rec = _JointLine(int(tokens[1][0]), lineno, tokens[1][1])

    for tok, tcol in tokens[2:]:
        key, eq, raw = tok.partition("=")
        if not eq or not raw:
            diags.append(_err(lineno, tcol, f"expected key=value, got {tok!r}", "malformed-field"))
            continue
        syntax = _FIELD_SYNTAX.get(key)
        if syntax is None:
            diags.append(_err(lineno, tcol, f"unknown field {key!r}", "unknown-field"))
            continue
        if key in rec.cols:
            diags.append(_err(lineno, tcol, f"duplicate field {key!r}", "duplicate-field"))
            continue
        rec.cols[key] = tcol
        if syntax == "kind":
            if raw in JOINT_KINDS:
                rec.kind = raw
            else:
                diags.append(_err(lineno, tcol, f"joint type must be revolute or prismatic, got {raw!r}", "bad-kind"))
        else:
            value = _parse_value(raw, allow_pi=(syntax == "angle"))
            if value is None:
                code = "bad-angle" if syntax == "angle" else "bad-number"
                what = "number or pi fraction" if syntax == "angle" else "number"
                diags.append(_err(lineno, tcol, f"{key}: expected a finite {what}, got {raw!r}", code))
            else:
                rec.values[key] = value

    for key in _REQUIRED_FIELDS:
        if key not in rec.cols:
            diags.append(_err(lineno, rec.column, f"joint {rec.index}: missing field {key!r}", "missing-field"))

    v = rec.values
    if "min" in v and "max" in v:
        if v["min"] > v["max"]:
            diags.append(_err(lineno, rec.cols["min"],
                              f"min {v['min']!r} > max {v['max']!r}", "limits-inverted"))
        else:
            if "fixed" in v and not v["min"] <= v["fixed"] <= v["max"]:
                diags.append(_err(lineno, rec.cols["fixed"],
                                  f"fixed value {v['fixed']!r} outside limits", "fixed-out-of-range"))
            if v["min"] == v["max"]:
                diags.append(_warn(lineno, rec.cols["min"],
                                   f"joint {rec.index}: min == max, joint cannot move", "zero-span-limits"))

    return rec


def _check_indices(joints, diags):
    seen = {}
    for j in joints:
        if j.index in seen:
            diags.append(_err(j.line, j.column, f"duplicate joint index {j.index}", "duplicate-joint-index"))
        else:
            seen[j.index] = j
    if not seen:
        return
    expected = range(1, len(seen) + 1)
    if sorted(seen) != list(expected):
        # n distinct indices not equal to 1..n means at least one lies outside
        j = next(seen[i] for i in sorted(seen) if i not in expected)
        diags.append(_err(j.line, j.column,
                          f"joint indices must be contiguous 1..{len(seen)}, got {sorted(seen)}",
                          "noncontiguous-indices"))


def validate(model: RobotModel) -> list[Diagnostic]:
    """Semantic checks on an already-built model.

    Structural invariants (finite values, ordered limits, fixed within
    limits) are enforced by the DHRow/RobotModel constructors, so this
    reports only what those types permit: a chain with no degrees of
    freedom is an error, zero-span limits a warning. Positions anchor at
    1:1 since there is no source text.
    """
    diags = []
    if model.movable_count == 0:
        diags.append(_err(1, 1, "every joint is fixed; at least one degree of freedom is required",
                          "all-joints-fixed"))
    for row in model.rows:
        if row.limits[0] == row.limits[1]:
            diags.append(_warn(1, 1, f"joint {row.index}: min == max, joint cannot move",
                               "zero-span-limits"))
    return diags


def _unscale(value: float, factor: float) -> float:
    """Inverse of the load-time unit conversion, exact where possible.

    Returns w such that w * factor == value, nudging w by a few ulps if
    plain division does not round-trip. Values that came from a parsed
    file always have such a w; arbitrary programmatic values may not, in
    which case the closest quotient is returned (reparse can then differ
    in the last ulp).
    """
    if factor == 1.0:
        return value
    w = value / factor
    if w * factor == value:
        return w
    for target in (math.inf, -math.inf):
        cand = w
        for _ in range(4):
            cand = math.nextafter(cand, target)
            if cand * factor == value:
                return cand
    return w


def _fmt_num(value: float) -> str:
    return "%.17g" % value


def _fmt_angle(value: float) -> str:
    """Canonical angle token: an exact pi fraction when the value is one."""
    if math.pi / 360 <= abs(value) <= math.pi:
        for den in range(1, 361):
            ref = math.pi / den
            if value == ref:
                return "pi" if den == 1 else f"pi/{den}"
            if value == -ref:
                return "-pi" if den == 1 else f"-pi/{den}"
    return _fmt_num(value)


def serialize_robot(model: RobotModel) -> str:
    """Canonical text for a model, in its source units.

    Fields appear in a fixed order; angles that equal a pi fraction
    exactly are written as pi tokens. parse_robot(serialize_robot(m))
    reproduces m field for field.
    """
    factor = UNIT_FACTORS[model.source_units]

    def _fmt_length(value):
        return _fmt_num(_unscale(value, factor))

    lines = [f'robot "{model.name}"', f"units {model.source_units}"]
    for row in model.rows:
        fmt_limit = _fmt_length if row.kind == PRISMATIC else _fmt_angle
        parts = [
            f"joint {row.index}",
            f"type={row.kind}",
            f"a={_fmt_length(row.a)}",
            f"alpha={_fmt_angle(row.alpha)}",
            f"d={_fmt_length(row.d)}",
            f"offset={_fmt_angle(row.theta_offset)}",
            f"min={fmt_limit(row.limits[0])}",
            f"max={fmt_limit(row.limits[1])}",
        ]
        if row.fixed is not None:
            parts.append(f"fixed={fmt_limit(row.fixed)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


_FIXTURE_FILES = {
    "smokie": "smokie.robot",
    "wam": "wam.robot",
    "wam-code-variant": "wam_code_variant.robot",
}


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_FIXTURE_FILES))


def fixture_source(name: str) -> str:
    """Raw description text of a packaged fixture."""
    try:
        fname = _FIXTURE_FILES[name]
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; expected one of {', '.join(fixture_names())}"
        ) from None
    return (importlib.resources.files(__package__) / "fixtures" / fname).read_text("utf-8")


@functools.lru_cache(maxsize=None)
def builtin_fixture(name: str) -> RobotModel:
    """A packaged robot model by name: smokie, wam, or wam-code-variant."""
    model, diagnostics = parse_robot(fixture_source(name))
    if model is None:
        raise RuntimeError(f"packaged fixture {name!r} failed to parse: {diagnostics}")
    return model
