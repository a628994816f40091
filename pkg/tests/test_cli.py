"""CLI behavior: subcommands, file formats, exit codes, atomic output."""

import json
import math
import subprocess

import numpy as np
import pytest

from dhworkspace import SampleSpec, builtin_fixture, generate_cloud, summarize
from dhworkspace.cli import main

GOOD = 'robot "T"\nunits m\njoint 1 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1\n'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- validate ----------------------------------------------------------------

def test_validate_clean_fixture_is_silent(capsys):
    code, out, err = run(capsys, "validate", "builtin:smokie")
    assert (code, out, err) == (0, "", "")


def test_validate_reads_files(tmp_path, capsys):
    path = tmp_path / "t.robot"
    path.write_text(GOOD)
    assert run(capsys, "validate", str(path))[0] == 0


def test_validate_prints_warnings_but_passes(tmp_path, capsys):
    path = tmp_path / "t.robot"
    path.write_text(GOOD.replace("min=-1 max=1", "min=1 max=1"))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 0
    assert out == ""
    assert "warning" in err and "[zero-span-limits]" in err


def test_validate_structural_error_exits_2(tmp_path, capsys):
    path = tmp_path / "t.robot"
    path.write_text(GOOD.replace("units m", "units yards"))
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert f"{path}:2:7: error:" in err
    assert "[bad-units]" in err


def test_validate_semantic_error_exits_3(tmp_path, capsys):
    path = tmp_path / "t.robot"
    path.write_text(GOOD.replace("min=-1 max=1", "min=1 max=-1"))
    code, _, err = run(capsys, "validate", str(path))
    assert code == 3
    assert "[limits-inverted]" in err


# --- fk ------------------------------------------------------------------------

def test_fk_wam_zero_config_golden(capsys):
    code, out, err = run(capsys, "fk", "builtin:wam", "--q", "0,0,0,0,0,0")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == 5
    assert lines[0] == "1.000000000 0.000000000 0.000000000 0.000000000"
    assert lines[1] == "0.000000000 1.000000000 0.000000000 0.000000000"
    assert lines[2] == "0.000000000 0.000000000 1.000000000 0.910000000"
    assert lines[3] == "0.000000000 0.000000000 0.000000000 1.000000000"
    assert lines[4] == "0.000000000 0.000000000 0.910000000"


def test_fk_degrees_converts_revolute_values(capsys):
    in_degrees = run(capsys, "fk", "builtin:smokie", "--q", "90,0,0,0,0,0", "--degrees")
    in_radians = run(capsys, "fk", "builtin:smokie", "--q", f"{math.pi / 2!r},0,0,0,0,0")
    assert in_degrees == in_radians
    assert in_degrees[0] == 0


def test_fk_degrees_leaves_prismatic_values_alone(tmp_path, capsys):
    path = tmp_path / "mixed.robot"
    path.write_text(
        'robot "M"\nunits m\n'
        "joint 1 type=revolute a=0.2 alpha=0 d=0 offset=0 min=-pi max=pi\n"
        "joint 2 type=prismatic a=0 alpha=0 d=0 offset=0 min=0 max=1\n")
    a = run(capsys, "fk", str(path), "--q", "90,0.5", "--degrees")
    b = run(capsys, "fk", str(path), "--q", f"{math.pi / 2!r},0.5")
    assert a == b


def test_fk_wrong_arity_exits_4(capsys):
    code, _, err = run(capsys, "fk", "builtin:wam", "--q", "0,0")
    assert code == 4
    assert "6 movable joints" in err


def test_fk_out_of_limit_exits_4(capsys):
    code, _, err = run(capsys, "fk", "builtin:wam", "--q", "3,0,0,0,0,0")
    assert code == 4
    assert "joint 2" in err and "limit" in err


def test_fk_malformed_q_exits_1(capsys):
    code, _, err = run(capsys, "fk", "builtin:wam", "--q", "a,b,c")
    assert code == 1


def test_fk_rejects_broken_robot_file(tmp_path, capsys):
    path = tmp_path / "t.robot"
    path.write_text("robot nope\n")
    code, _, err = run(capsys, "fk", str(path), "--q", "0")
    assert code == 2
    assert "[bad-robot-name]" in err


# --- workspace ------------------------------------------------------------------

def test_workspace_csv_content(tmp_path, capsys):
    out_file = tmp_path / "cloud.csv"
    code, out, err = run(capsys, "workspace", "builtin:wam", "--samples", "5",
                         "--seed", "9", "--out", str(out_file))
    assert (code, out, err) == (0, "", "")
    lines = out_file.read_text().splitlines()
    assert lines[0] == "x,y,z"
    assert len(lines) == 6
    cloud = generate_cloud(builtin_fixture("wam"), SampleSpec(n=5, seed=9))
    expected = ["%.9f,%.9f,%.9f" % tuple(p) for p in cloud.points.tolist()]
    assert lines[1:] == expected


def test_workspace_runs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "workspace", "builtin:smokie", "--samples", "500", "--out", str(a))
    run(capsys, "workspace", "builtin:smokie", "--samples", "500", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_workspace_ply_header_and_count(tmp_path, capsys):
    out_file = tmp_path / "cloud.ply"
    code, _, _ = run(capsys, "workspace", "builtin:wam", "--samples", "7",
                     "--seed", "1", "--out", str(out_file), "--format", "ply")
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "ply"
    assert lines[1] == "format ascii 1.0"
    assert lines[3] == "element vertex 7"
    assert lines[4:7] == ["property float x", "property float y", "property float z"]
    assert lines[7] == "end_header"
    body = lines[8:]
    assert len(body) == 7
    assert all(len(row.split()) == 3 for row in body)


def test_workspace_leaves_no_temp_files(tmp_path, capsys):
    out_file = tmp_path / "cloud.csv"
    run(capsys, "workspace", "builtin:wam", "--samples", "10", "--out", str(out_file))
    assert [p.name for p in tmp_path.iterdir()] == ["cloud.csv"]


def test_workspace_default_flags(tmp_path, capsys):
    # defaults: 20000 samples, seed 42
    out_file = tmp_path / "cloud.csv"
    code, _, _ = run(capsys, "workspace", "builtin:wam", "--out", str(out_file))
    assert code == 0
    assert sum(1 for _ in out_file.open()) == 20001


# --- project ---------------------------------------------------------------------

def test_project_writes_two_columns(tmp_path, capsys):
    out_file = tmp_path / "proj.csv"
    code, _, _ = run(capsys, "project", "builtin:smokie", "--samples", "50",
                     "--seed", "4", "--plane", "xz", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "u,v"
    assert len(lines) == 51
    cloud = generate_cloud(builtin_fixture("smokie"), SampleSpec(n=50, seed=4))
    expected = ["%.9f,%.9f" % (p[0], p[2]) for p in cloud.points.tolist()]
    assert lines[1:] == expected


def test_project_requires_plane(tmp_path, capsys):
    code, _, _ = run(capsys, "project", "builtin:smokie", "--out",
                     str(tmp_path / "p.csv"))
    assert code == 1


# --- volume ----------------------------------------------------------------------

def test_volume_json_payload(capsys):
    code, out, err = run(capsys, "volume", "builtin:wam", "--samples", "2000",
                         "--seed", "42", "--voxel", "0.05")
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert list(payload) == ["robot", "n", "seed", "voxel_resolution",
                             "occupied_count", "volume_m3", "max_reach_m",
                             "bbox_min", "bbox_max"]
    cloud = generate_cloud(builtin_fixture("wam"), SampleSpec(n=2000, seed=42))
    summary = summarize(cloud, 0.05)
    assert payload["robot"] == "WAM"
    assert payload["n"] == 2000 and payload["seed"] == 42
    assert payload["occupied_count"] == summary.occupied_count
    assert payload["volume_m3"] == summary.volume_estimate
    assert payload["max_reach_m"] == summary.max_reach
    assert payload["volume_m3"] == payload["occupied_count"] * 0.05 ** 3
    assert tuple(payload["bbox_min"]) == summary.bbox_min
    assert tuple(payload["bbox_max"]) == summary.bbox_max


def test_volume_is_deterministic(capsys):
    a = run(capsys, "volume", "builtin:smokie", "--samples", "1000")
    b = run(capsys, "volume", "builtin:smokie", "--samples", "1000")
    assert a == b


# --- error handling ----------------------------------------------------------------

def test_unknown_builtin_exits_1(capsys):
    code, _, err = run(capsys, "validate", "builtin:hal9000")
    assert code == 1
    assert "unknown fixture" in err


def test_missing_file_exits_5(capsys):
    code, _, err = run(capsys, "validate", "no/such/file.robot")
    assert code == 5
    assert "cannot read" in err


def test_unwritable_output_exits_5(tmp_path, capsys):
    code, _, err = run(capsys, "workspace", "builtin:wam", "--samples", "5",
                       "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 5
    assert "cannot write" in err


def test_missing_subcommand_exits_1(capsys):
    assert run(capsys, )[0] == 1


def test_unknown_subcommand_exits_1(capsys):
    assert run(capsys, "teleport")[0] == 1


def test_bad_flag_value_exits_1(capsys):
    assert run(capsys, "workspace", "builtin:wam", "--samples", "0",
               "--out", "x.csv")[0] == 1
    assert run(capsys, "volume", "builtin:wam", "--voxel", "-1")[0] == 1


def test_missing_required_flag_exits_1(capsys):
    assert run(capsys, "workspace", "builtin:wam")[0] == 1


def test_non_utf8_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bin.robot"
    path.write_bytes(b"\xff\xfe\x00robot")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "UTF-8" in err


def test_console_script_is_installed():
    proc = subprocess.run(["dhworkspace", "validate", "builtin:wam"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "" and proc.stderr == ""
