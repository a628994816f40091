"""Command-line front end.

Subcommands: validate (diagnostics for a description file), fk (one
transform), workspace (point cloud as CSV or PLY), project (2D CSV),
volume (JSON summary on stdout). Robots are given as a file path or as
`builtin:<name>` for a packaged fixture.

Exit codes: 0 success, 1 usage error, 2 parse error in the robot file,
3 validation error (the file is well-formed but the model is rejected),
4 FK domain error (wrong arity or out-of-limit joint value), 5 I/O error.
Diagnostics and error messages go to stderr; output files are written
atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .kinematics import REVOLUTE, KinematicsError, forward_kinematics
from .robotfile import ERROR, fixture_names, fixture_source, parse_robot
from .workspace import SampleSpec, generate_cloud, project, summarize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_FK_DOMAIN = 4
EXIT_IO = 5

#: codes for files that are well-formed text but describe a rejected model;
#: any other error code means the text itself is broken
_SEMANTIC_CODES = frozenset({"limits-inverted", "fixed-out-of-range", "all-joints-fixed"})


class _Failure(Exception):
    """Abort the command with a message on stderr and a specific exit code."""

    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Failure(EXIT_USAGE, message)


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_float(raw: str) -> float:
    value = float(raw)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _f9(value: float) -> str:
    # + 0.0 folds negative zero into "0.000000000"
    return "%.9f" % (value + 0.0)


def _read_source(source_arg: str):
    """Description text for a path or builtin:<name> argument."""
    if source_arg.startswith("builtin:"):
        try:
            return fixture_source(source_arg[len("builtin:"):]), source_arg
        except ValueError as exc:
            raise _Failure(EXIT_USAGE, str(exc)) from None
    try:
        with open(source_arg, encoding="utf-8") as handle:
            return handle.read(), source_arg
    except UnicodeDecodeError:
        raise _Failure(EXIT_PARSE, f"{source_arg}: not valid UTF-8 text") from None
    except OSError as exc:
        raise _Failure(EXIT_IO, f"cannot read {source_arg}: {exc.strerror or exc}") from None


def _report(diags, label):
    for diag in diags:
        print(f"{label}:{diag}", file=sys.stderr)


def _classify(diags) -> int:
    errors = [d for d in diags if d.severity == ERROR]
    if not errors:
        return EXIT_OK
    if all(d.code in _SEMANTIC_CODES for d in errors):
        return EXIT_VALIDATION
    return EXIT_PARSE


def _require_model(source_arg: str):
    text, label = _read_source(source_arg)
    model, diags = parse_robot(text)
    _report(diags, label)
    if model is None:
        raise _Failure(_classify(diags), f"{label}: robot description rejected")
    return model


def _write_out(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=os.path.basename(path) + ".")
    except OSError as exc:
        raise _Failure(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(text.encode("utf-8"))
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise _Failure(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None


def _csv_lines(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_f9(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _ply_text(cloud) -> str:
    lines = [
        "ply",
        "format ascii 1.0",
        f"comment robot={cloud.robot} seed={cloud.seed} n={cloud.n}",
        f"element vertex {cloud.n}",
        "property float x",
        "property float y",
        "property float z",
        "end_header",
    ]
    lines.extend(" ".join(_f9(v) for v in row) for row in cloud.points.tolist())
    return "\n".join(lines) + "\n"


def _cmd_validate(args) -> int:
    text, label = _read_source(args.robot)
    _, diags = parse_robot(text)
    _report(diags, label)
    return _classify(diags)


def _cmd_fk(args) -> int:
    model = _require_model(args.robot)
    try:
        q = [float(tok) for tok in args.q.split(",")]
    except ValueError:
        raise _Failure(EXIT_USAGE, f"--q expects comma-separated numbers, got {args.q!r}") from None
    movable = model.movable_rows
    if len(q) != len(movable):
        raise _Failure(EXIT_FK_DOMAIN,
                       f"robot has {len(movable)} movable joints, --q gave {len(q)} values")
    if args.degrees:
        q = [math.radians(v) if row.kind == REVOLUTE else v
             for row, v in zip(movable, q)]
    try:
        T = forward_kinematics(model, q)
    except KinematicsError as exc:
        raise _Failure(EXIT_FK_DOMAIN, str(exc)) from None
    for row in T.tolist():
        print(" ".join(_f9(v) for v in row))
    print(" ".join(_f9(v) for v in T[:3, 3].tolist()))
    return EXIT_OK


def _cmd_workspace(args) -> int:
    model = _require_model(args.robot)
    cloud = generate_cloud(model, SampleSpec(n=args.samples, seed=args.seed))
    if args.format == "csv":
        text = _csv_lines("x,y,z", cloud.points.tolist())
    else:
        text = _ply_text(cloud)
    _write_out(args.out, text)
    return EXIT_OK


def _cmd_project(args) -> int:
    model = _require_model(args.robot)
    cloud = generate_cloud(model, SampleSpec(n=args.samples, seed=args.seed))
    uv = project(cloud, args.plane)
    _write_out(args.out, _csv_lines("u,v", uv.tolist()))
    return EXIT_OK


def _cmd_volume(args) -> int:
    model = _require_model(args.robot)
    cloud = generate_cloud(model, SampleSpec(n=args.samples, seed=args.seed))
    summary = summarize(cloud, args.voxel)
    payload = {
        "robot": summary.robot,
        "n": summary.n,
        "seed": summary.seed,
        "voxel_resolution": summary.voxel_resolution,
        "occupied_count": summary.occupied_count,
        "volume_m3": summary.volume_estimate,
        "max_reach_m": summary.max_reach,
        "bbox_min": list(summary.bbox_min),
        "bbox_max": list(summary.bbox_max),
    }
    print(json.dumps(payload))
    return EXIT_OK


def _add_sampling_args(p):
    p.add_argument("--samples", type=_positive_int, default=20000,
                   help="number of sampled configurations (default 20000)")
    p.add_argument("--seed", type=_seed, default=42,
                   help="stream seed (default 42)")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dhworkspace",
                     description="Forward kinematics and workspace mapping for serial arms")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("robot",
                       help="description file path, or builtin:<%s>" % "|".join(fixture_names()))
        return p

    p = add("validate", "parse a robot description and report diagnostics")
    p.set_defaults(handler=_cmd_validate)

    p = add("fk", "print the 4x4 base-to-end-effector transform and position")
    p.add_argument("--q", required=True,
                   help="comma-separated joint values, one per movable joint "
                        "(use --q=-0.5,... when the first value is negative)")
    p.add_argument("--degrees", action="store_true",
                   help="interpret revolute joint values as degrees")
    p.set_defaults(handler=_cmd_fk)

    p = add("workspace", "sample the reachable workspace and write the point cloud")
    _add_sampling_args(p)
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--format", choices=("csv", "ply"), default="csv")
    p.set_defaults(handler=_cmd_workspace)

    p = add("project", "write a planar projection of the sampled cloud as CSV")
    _add_sampling_args(p)
    p.add_argument("--plane", choices=("xy", "xz", "yz"), required=True,
                   help="projection plane (xy drops z, xz drops y, yz drops x)")
    p.add_argument("--out", required=True, help="output file path")
    p.set_defaults(handler=_cmd_project)

    p = add("volume", "print a JSON workspace summary on stdout")
    _add_sampling_args(p)
    p.add_argument("--voxel", type=_positive_float, default=0.02,
                   help="voxel edge length in meters (default 0.02)")
    p.set_defaults(handler=_cmd_volume)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
