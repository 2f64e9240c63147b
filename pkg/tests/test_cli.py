"""
Test module for the command-line interface.
"""

import json

import pytest

from src.cli import main, parse_args, update_config
from src.data import emit
from src.utils.basic_utils import load_config


def run(capsys, *argv):
    """Exit code, stdout and stderr of one CLI call."""
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pan_pair_point(tmp_path):
    """Glued pan pair at leaf ratio 2 and bending value 1."""
    doc = emit("two-lanner-glue-1")
    doc["point"] = {"coordinates": {"(F1,F2,F3)": 2}}
    path = tmp_path / "point.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_update_config():
    """Test that flags override the configuration file."""
    args = parse_args(["enumerate", "--parallel", "3", "--oracle", "--seed", "7", "--tolerance-eps", "1e-6"])
    config = update_config(load_config(), args)
    assert config["enumeration"]["parallel"] == 3
    assert config["enumeration"]["oracle"]
    assert not config["enumeration"]["quotient_symmetry"]
    assert config["random_seed"] == 7
    assert config["tolerances"]["relation_eps"] == 1.0e-6


def test_unknown_flag():
    """Test that unknown flags are rejected."""
    with pytest.raises(SystemExit):
        parse_args(["classify", "--no-such-flag"])


def test_catalog_list(capsys):
    """Test the catalog listing in JSON and text."""
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) >= 12
    code, out, _ = run(capsys, "catalog", "--format", "text")
    assert "labeled-cube" in out


def test_catalog_emit_round_trip(capsys, tmp_path):
    """Test that an emitted entry written to a file is emitted again unchanged."""
    code, out, _ = run(capsys, "catalog", "case1-simplex")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "case1-simplex"
    assert set(doc["polytope"]["construct"]["simplex"]["labels"].values()) == {3}


def test_catalog_unknown(capsys):
    """Test the exit code of an unknown entry."""
    code, _, err = run(capsys, "catalog", "no-such-entry")
    assert code == 2
    assert "no-such-entry" in err


def test_classify_affine(capsys):
    """Test the affine triangle."""
    code, out, _ = run(capsys, "classify", "--input", "catalog:affine-A2-triangle", "--format", "text")
    assert code == 0
    assert out == "Affine, zero type, rank 2\n"


def test_classify_lanner(capsys):
    """Test the (2,3,7) triangle in text and DOT."""
    code, out, _ = run(capsys, "classify", "--input", "catalog:lanner-237-triangle", "--format", "text")
    assert code == 0
    assert out.startswith("Large, negative type, rank 3")
    assert "Lannér" in out
    code, out, _ = run(capsys, "classify", "--input", "catalog:lanner-237-triangle", "--format", "dot")
    assert out.startswith("graph coxeter {")
    assert 'label="7"' in out


def test_classify_invalid(capsys, tmp_path):
    """Test that a bad diagonal exits with the violation list."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"coxeter": {"index": ["a", "b"], "table": [[2, 3], [3, 1]]}}))
    code, out, err = run(capsys, "classify", "--input", str(path))
    assert code == 2
    assert out == ""
    assert "invalid Coxeter matrix" in err
    assert '"where"' in err


def test_classify_bad_label(capsys, tmp_path):
    """Test that a non-numeric label is a parse error."""
    path = tmp_path / "label.json"
    path.write_text(json.dumps({"coxeter": {"index": ["a", "b"], "labels": {"a,b": "seven"}}}))
    code, _, err = run(capsys, "classify", "--input", str(path))
    assert code == 2
    assert "Error:" in err


def test_classify_has_no_csv(capsys):
    """Test that an unsupported format is an error."""
    code, _, err = run(capsys, "classify", "--input", "catalog:affine-A3-diagram", "--format", "csv")
    assert code == 2
    assert "CSV" in err


def test_missing_input(capsys, tmp_path):
    """Test a missing flag and a missing file."""
    code, _, _ = run(capsys, "verify")
    assert code == 2
    code, _, err = run(capsys, "verify", "--input", str(tmp_path / "absent.json"))
    assert code == 2
    assert "not found" in err


def test_deform_info(capsys):
    """Test the chart report and the obstruction flag."""
    code, out, _ = run(capsys, "deform-info", "--input", "catalog:case1-simplex")
    assert code == 0
    report = json.loads(out)
    assert report["chart"]["dimension"] == 3
    assert report["chart"]["case"] == "case1"
    assert not report["connectedness_obstruction"]
    code, out, _ = run(capsys, "deform-info", "--input", "catalog:affine-circuit-glue")
    assert code == 0
    report = json.loads(out)
    assert report["connectedness_obstruction"]
    assert report["obstructions"] == [["F1", "F2", "F3"]]


def test_deform_info_cube(capsys):
    """Test that the cube has no chart."""
    code, _, _ = run(capsys, "deform-info", "--input", "catalog:labeled-cube")
    assert code == 2


def test_enumerate_infeasible(capsys):
    """Test that a label 5 gives exit code 3 with a complete report."""
    code, out, _ = run(capsys, "enumerate", "--input", "catalog:case5-simplex")
    assert code == 3
    report = json.loads(out)
    assert not report["feasible"]
    assert report["count"] == 0


def test_enumerate_pan_pair(capsys):
    """Test counts, symmetry quotient and oracle agreement."""
    code, out, _ = run(capsys, "enumerate", "--input", "catalog:two-lanner-glue-1", "--format", "text",
                       "--quotient-symmetry", "--oracle")
    assert code == 0
    assert out == "6 integral points, 4 up to symmetry, direct search agrees (6)\n"


def test_enumerate_affine_glue(capsys):
    """Test the affine interface shortcut."""
    code, out, _ = run(capsys, "enumerate", "--input", "catalog:affine-circuit-glue")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 0
    assert report["shortcut"]["kind"] == "AffineEssentialCircuit"


def test_enumerate_is_byte_identical(capsys, tmp_path):
    """Test that reports do not depend on the run or the thread count."""
    paths = []
    for k, parallel in enumerate(("1", "2", "1")):
        path = tmp_path / f"run{k}.json"
        code, _, _ = run(capsys, "enumerate", "--input", "catalog:two-lanner-glue-1", "--parallel", parallel,
                         "--output", str(path))
        assert code == 0
        paths.append(path)
    texts = [p.read_bytes() for p in paths]
    assert texts[0] == texts[1] == texts[2]


def test_sweep(capsys, pan_pair_point):
    """Test the fiber table as CSV."""
    code, out, _ = run(capsys, "sweep", "--input", pan_pair_point, "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,E,E_float,D,D_float,status"
    assert len(lines) == 10
    assert sum(line.endswith(",pass") for line in lines) == 3
    code, out, _ = run(capsys, "sweep", "--input", pan_pair_point, "--format", "text")
    assert "3 of 9 candidates integral" in out


def test_verify(capsys, pan_pair_point):
    """Test a certified point and the cosine point."""
    code, out, _ = run(capsys, "verify", "--input", pan_pair_point)
    assert code == 0
    report = json.loads(out)
    assert report["integral"]
    assert report["certificate"]["entries"]
    code, out, err = run(capsys, "verify", "--input", "catalog:two-lanner-glue-1")
    assert code == 5
    assert "not integral" in err


def test_realize(capsys, pan_pair_point):
    """Test matrices, relations and the trace probe."""
    code, out, _ = run(capsys, "realize", "--input", pan_pair_point)
    assert code == 0
    report = json.loads(out)
    assert report["realization"]["dimension"] == 3
    assert len(report["realization"]["generators"]) == 5
    assert report["relations"]["ok"]
    assert report["probe"]["seed"] == 42
    assert report["probe"]["integral_traces"]

    code, out, _ = run(capsys, "realize", "--input", "catalog:case3-simplex", "--seed", "11")
    assert code == 0
    report = json.loads(out)
    assert report["probe"]["seed"] == 11
    assert not report["probe"]["integral_traces"]
