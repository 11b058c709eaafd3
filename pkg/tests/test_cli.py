"""CLI behaviour: output formats, exit codes, determinism.

Everything goes through main(argv) so the tests see exactly what a shell
user sees, including stderr diagnostics and exit statuses.
"""

import json

import pytest

from steiner_ekr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- validate and generate -----------------------------------------------------


def test_validate_text(capsys):
    code, out, err = run(capsys, "validate", "--design", "unital:3")
    assert code == 0 and err == ""
    assert out == "valid 2-(28,4,1) design: 63 blocks, replication 9\n"


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "--design", "projective:2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "source": "projective:2", "v": 7, "k": 3, "b": 7, "r": 3, "valid": True,
    }


def test_validate_csv(capsys):
    code, out, _ = run(capsys, "validate", "--design", "affine:3", "--format", "csv")
    assert code == 0
    assert out == "v,k,b,r,valid\n9,3,12,4,true\n"


def test_generate_round_trip(capsys, tmp_path):
    path = tmp_path / "unital3.txt"
    code, out, err = run(capsys, "generate", "--design", "unital:3", "--out", str(path))
    assert (code, out, err) == (0, "", "")
    lines = path.read_text().splitlines()
    assert lines[0] == "28 4"
    assert len(lines) == 64
    code, out, _ = run(capsys, "validate", "--design", f"file:{path}")
    assert code == 0 and "valid 2-(28,4,1)" in out


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--design", "projective:2")
    assert code == 0
    assert out.splitlines()[0] == "7 3"
    assert len(out.splitlines()) == 8


def test_sts13_defaults_to_first_variant(capsys):
    _, out1, _ = run(capsys, "generate", "--design", "sts13")
    _, out2, _ = run(capsys, "generate", "--design", "sts13:1")
    _, out3, _ = run(capsys, "generate", "--design", "sts13:2")
    assert out1 == out2 != out3


# -- enumeration and classification ---------------------------------------------


def test_enumerate_text_fano(capsys):
    code, out, _ = run(capsys, "enumerate", "--design", "projective:2")
    assert code == 0
    assert out == "maximal families: 1\n  [7] 0 1 2 3 4 5 6\n"


def test_enumerate_json_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--design", "sts13:1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 201
    assert payload["min_size"] == 1
    assert len(payload["families"]) == 201
    sizes = sorted({f["size"] for f in payload["families"]})
    assert sizes == [4, 5, 6]


def test_enumerate_size_only(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--design", "sts13:1", "--size-only", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["sizes"] == {"6": 13, "5": 24, "4": 164}


def test_enumerate_min_size_csv(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--design", "sts13:1", "--min-size", "6", "--format", "csv"
    )
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "size,blocks"
    assert len(rows) == 14
    assert all(r.startswith("6,") for r in rows[1:])


def test_enumerate_budget_exit(capsys):
    code, out, err = run(capsys, "enumerate", "--design", "sts13:1", "--max-count", "10")
    assert code == 1 and out == ""
    assert err.startswith("error: 201 maximal families exceed")


def test_classify_json_sts13(capsys):
    code, out, _ = run(capsys, "classify", "--design", "sts13:1", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["design"]["source"] == "sts13:1"
    assert report["family_count"] == 201
    assert [(t["label"], t["size"], t["count"]) for t in report["types"]] == [
        ("point-pencil", 6, 13), ("EKR_5", 5, 24), ("EKR_4", 4, 164),
    ]


def test_classify_text_unital(capsys):
    code, out, _ = run(capsys, "classify", "--design", "unital:2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "types: 2 (maximal families: 81)"
    assert lines[1].startswith("  point-pencil: size 4, count 9,")
    assert lines[3].startswith("  EKR_4: size 4, count 72,")
    assert lines[2].startswith("    witness: ")


def test_classify_csv_header(capsys):
    code, out, _ = run(capsys, "classify", "--design", "kgraph:5", "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "label,size,count,covered,max_multiplicity,witness"
    assert len(rows) == 3


# -- onan and max-size ------------------------------------------------------------


def test_onan_json_fano(capsys):
    code, out, _ = run(capsys, "onan", "--design", "projective:2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["found"] is True
    assert payload["blocks"] == [0, 1, 3, 6]


def test_onan_text_unital(capsys):
    code, out, _ = run(capsys, "onan", "--design", "unital:3")
    assert code == 0
    assert out == "o'nan configuration: none\n"


def test_onan_csv(capsys):
    code, out, _ = run(capsys, "onan", "--design", "projective:2", "--format", "csv")
    assert out == "found,blocks\ntrue,0 1 3 6\n"


def test_max_size(capsys):
    code, out, _ = run(capsys, "max-size", "--design", "pg3:2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == 7
    assert len(payload["witness"]) == 7


# -- bound verb --------------------------------------------------------------------


def test_bound_counting_text(capsys):
    code, out, _ = run(
        capsys, "bound", "--formula", "counting", "--k", "3", "--r", "6", "--excess", "1"
    )
    assert code == 0
    assert out == (
        "formula: counting\n"
        "inputs: k=3 r=6 excess=1\n"
        "value: 5/1\n"
        "floor_value: 5\n"
        "active_branch: 1\n"
    )


def test_bound_unital_second_json(capsys):
    code, out, _ = run(
        capsys, "bound", "--formula", "unital-second", "--q", "5", "--format", "json"
    )
    payload = json.loads(out)
    assert code == 0
    assert payload["floor_value"] == 22
    assert payload["value"]["radicand"] == 5


def test_bound_cover_range(capsys):
    code, out, _ = run(
        capsys, "bound", "--formula", "cover-range", "--k", "4", "--shortfall", "2",
        "--format", "json",
    )
    assert json.loads(out) == {
        "formula": "cover-range",
        "inputs": {"k": 4, "shortfall": 2},
        "low": "12/1",
        "high": "14/1",
    }


def test_bound_near_extremal(capsys):
    code, out, _ = run(
        capsys, "bound", "--formula", "near-extremal", "--k", "4", "--r", "9",
        "--format", "json",
    )
    payload = json.loads(out)
    assert payload["verdict"] == "classified"
    assert payload["window_low"] == {"a": "6/1", "b": "3/4", "n": 4}
    assert payload["window_high"] == 12


def test_bound_replication_and_pencil(capsys):
    _, out, _ = run(
        capsys, "bound", "--formula", "replication", "--k", "4", "--r", "13",
        "--format", "json",
    )
    assert json.loads(out)["verdict"] == "bound-holds"
    _, out, _ = run(
        capsys, "bound", "--formula", "pencil-uniqueness", "--k", "3", "--v", "19",
        "--format", "json",
    )
    payload = json.loads(out)
    assert payload["met"] is True and payload["threshold"] == 19


def test_bound_discriminant_uses_excess_as_b(capsys):
    _, out, _ = run(
        capsys, "bound", "--formula", "discriminant", "--k", "14", "--excess", "0",
        "--format", "json",
    )
    payload = json.loads(out)
    assert payload["value"] == 5005732 and payload["inputs"]["b"] == 0


def test_bound_csv(capsys):
    code, out, _ = run(
        capsys, "bound", "--formula", "multiplicity-cap", "--k", "4", "--max-mult", "4",
        "--format", "csv",
    )
    rows = out.splitlines()
    assert rows[0] == "formula,inputs,value,floor_value"
    assert rows[1].startswith("multiplicity-cap,")
    assert rows[1].endswith(",13,13")


# -- sweep verb ---------------------------------------------------------------------


def test_sweep_deficit_grid_json(capsys):
    code, out, _ = run(
        capsys, "sweep", "--check", "deficit-grid", "--k", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["certified"] is True and payload["total_cases"] == 4


def test_sweep_deficit_grid_all(capsys):
    code, out, _ = run(
        capsys, "sweep", "--check", "deficit-grid", "--k", "all", "--format", "json"
    )
    payload = json.loads(out)
    assert payload["certified"] is True and payload["total_cases"] == 362


def test_sweep_moments_text(capsys):
    code, out, _ = run(
        capsys, "sweep", "--check", "moments",
        "--l", "2", "--a", "2", "--excess", "1", "--r", "6",
    )
    assert code == 0
    assert "check: moments" in out
    assert "total_cases: 1" in out
    assert "certified: true" in out


def test_sweep_large_k_caps_runtime(capsys):
    code, out, _ = run(
        capsys, "sweep", "--check", "large-k", "--k-max", "20", "--format", "json"
    )
    payload = json.loads(out)
    assert payload["certified"] is True
    assert payload["total_cases"] == 49


# -- exit codes and determinism --------------------------------------------------


def test_unknown_design_exits_one(capsys):
    code, out, err = run(capsys, "validate", "--design", "septagon:9")
    assert code == 1 and out == ""
    assert err.startswith("error: unknown design 'septagon'")


def test_bad_parameter_exits_one(capsys):
    for design in ("affine:x", "unital:6", "sts13:3", "affine"):
        code, _, err = run(capsys, "validate", "--design", design)
        assert code == 1 and err.startswith("error: "), design


def test_missing_file_exits_one(capsys, tmp_path):
    code, _, err = run(capsys, "validate", "--design", f"file:{tmp_path}/absent.txt")
    assert code == 1 and err.startswith("error: ")


def test_corrupt_file_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("7 3\n0 1 2\n")
    code, _, err = run(capsys, "validate", "--design", f"file:{path}")
    assert code == 1 and "error: " in err


def test_domain_error_exits_one(capsys):
    code, _, err = run(
        capsys, "bound", "--formula", "counting", "--k", "2", "--r", "3", "--excess", "0"
    )
    assert code == 1 and err.startswith("error: counting bound needs")


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "no-such-verb")[0] == 2
    assert run(capsys, "enumerate")[0] == 2  # --design is required
    assert run(capsys, "bound", "--formula", "counting", "--k", "3")[0] == 2
    assert run(capsys, "sweep", "--check", "deficit-grid", "--k", "4.5")[0] == 2
    assert run(capsys, "sweep", "--check", "deficit-grid")[0] == 2


def test_byte_identical_reruns(capsys):
    argv = ("classify", "--design", "sts13:2", "--format", "json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_worker_count_does_not_change_output(capsys, monkeypatch):
    base = run(capsys, "enumerate", "--design", "sts13:1", "--format", "csv")
    multi = run(
        capsys, "enumerate", "--design", "sts13:1", "--format", "csv", "--workers", "3"
    )
    assert base == multi
    monkeypatch.setenv("EKR_WORKERS", "2")
    env = run(capsys, "enumerate", "--design", "sts13:1", "--format", "csv")
    assert env == base


def test_bad_worker_env_exits_one(capsys, monkeypatch):
    monkeypatch.setenv("EKR_WORKERS", "many")
    code, _, err = run(capsys, "enumerate", "--design", "projective:2")
    assert code == 1 and "EKR_WORKERS" in err
