from __future__ import annotations

import json

import pytest

from tricenters.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_centers_incenter(capsys):
    code, out = run(capsys, "centers", "3", "4", "5", "--id", "1", "--format", "structured")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["center"] == 1
    assert rec["barycentric"] == ["1/4", "1/3", "5/12"]
    assert rec["cartesian"] == ["1", "1"]


def test_centers_all_human(capsys):
    code, out = run(capsys, "centers", "3", "4", "5")
    assert code == 0
    assert "X1" in out


def test_not_a_triangle_is_usage_error(capsys):
    code, _ = run(capsys, "centers", "1", "2", "5")
    assert code == 2


def test_decimal_sides_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["centers", "0.3", "4", "5"])
    assert exc.value.code == 2


def test_dist(capsys):
    code, out = run(capsys, "dist", "3", "4", "5", "3", "4", "--format", "structured")
    assert code == 0
    rec = json.loads(out)
    assert rec["d"] == "5/2"


def test_verify_refuted_exit_code(capsys):
    code, out = run(capsys, "verify", "18", "1", "2", "1", "le", "--samples", "2000")
    assert code == 1
    assert "refuted" in out


def test_verify_identity_eq_ratio(capsys):
    code, out = run(capsys, "verify", "1", "2", "8", "1/3", "eq-ratio")
    assert code == 0


def test_verify_bad_constant(capsys):
    code, _ = run(capsys, "verify", "6", "1", "3", "0.27", "le")
    assert code == 2


def test_bad_center_index():
    with pytest.raises(SystemExit) as exc:
        main(["dist", "3", "4", "5", "1", "21"])
    assert exc.value.code == 2


def test_graph_dot(capsys):
    code, out = run(capsys, "graph", "5", "--format", "dot", "--samples", "500")
    assert code == 0
    assert out.startswith("digraph X5 {")
    assert out.rstrip().endswith("}")
    assert "3 -> 4 [dir=both];" in out


def test_structured_output_is_deterministic(capsys):
    _, first = run(capsys, "graph", "3", "--format", "structured", "--samples", "500")
    _, second = run(capsys, "graph", "3", "--format", "structured", "--samples", "500")
    assert first == second
    for line in first.splitlines():
        json.loads(line)


def test_chain_fails_at_hub_18(capsys):
    code, _ = run(capsys, "chain", "18", "1", "2", "--samples", "2000")
    assert code == 1


def test_chain_passes(capsys):
    code, _ = run(capsys, "chain", "3", "9", "10", "2", "12", "7", "4", "--samples", "2000")
    assert code == 0


def test_out_file(tmp_path, capsys):
    path = tmp_path / "d.txt"
    code, _ = run(capsys, "dist", "3", "4", "5", "1", "3", "--out", str(path))
    assert code == 0
    assert path.read_text()
