import json

import pytest

import schmidt as sk
from schmidt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "-4")
    assert code == 0
    assert "euclidean    : yes" in out
    assert "h_K          : 1" in out
    assert "ghost        : none" in out
    code, out, _ = run(capsys, "info", "-15")
    assert code == 0
    assert "euclidean    : no" in out
    assert "B^2 = 15" in out


def test_info_rejects_non_fundamental(capsys):
    code, _, err = run(capsys, "info", "-12")
    assert code == 2
    assert "NonFundamental" in err


def test_delta_flag_alternative(capsys):
    code, out, _ = run(capsys, "info", "--delta", "-8")
    assert code == 0
    assert "discriminant : -8" in out


def test_count(capsys):
    code, out, _ = run(capsys, "count", "-7", "6")
    assert code == 0
    assert "h_K = 1" in out
    assert "PREDICTION-MISMATCH" not in out
    # the corollary-vs-kernel discrepancy is reported, not hidden
    code, out, _ = run(capsys, "count", "-15", "4")
    assert code == 0
    assert "2h_f-differs" in out


def test_enumerate_jsonl_round_trip(capsys):
    code, out, _ = run(capsys, "enumerate", "-7", "--bound", "3", "--format", "jsonl")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert lines
    for ln in lines:
        rec = json.loads(ln)
        sk.OrientedCircle.from_record(rec)  # re-parse validates the invariant
    # byte-determinism
    code2, out2, _ = run(capsys, "enumerate", "-7", "--bound", "3", "--format", "jsonl")
    assert out2 == out


def test_enumerate_table(capsys):
    code, out, _ = run(capsys, "enumerate", "-4", "--bound", "2", "--format", "table")
    assert code == 0
    assert "total:" in out


def test_render(tmp_path, capsys):
    out_file = tmp_path / "fig.svg"
    code, out, _ = run(capsys, "render", "-3", "--bound", "5", "--out", str(out_file))
    assert code == 0
    first = out_file.read_bytes()
    assert first.startswith(b"<?xml")
    code, _, _ = run(capsys, "render", "-3", "--bound", "5", "--out", str(out_file))
    assert out_file.read_bytes() == first


def test_ghost_check(capsys):
    code, out, _ = run(capsys, "ghost-check", "-15", "--bound", "5", "--window", "-1,2,-1,2")
    assert code == 0
    assert "separated" in out
    code, _, err = run(capsys, "ghost-check", "-4", "--bound", "5")
    assert code == 2
    assert "NoGhostCircle" in err


def test_path(capsys):
    code, out, _ = run(capsys, "path", "-4", "[[1,0],[0,1]]", "[[0,-1],[1,0]]")
    assert code == 0
    assert "verified: True" in out
    code, _, err = run(capsys, "path", "-19", "[[1,0],[0,1]]", "[[1,0],[0,1]]")
    assert code == 2


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "-19")
    assert code == 0
    assert "inside" in out and "B^2 = 19/6" in out
