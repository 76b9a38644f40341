import json
from importlib import resources

import jsonschema
import pytest

from crhom.cli import main
from crhom.surface import NAMED, serialize_surface

SCHEMA = json.loads(resources.files("crhom").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


@pytest.mark.parametrize(
    "argv",
    [
        ("bg-type", "Q(1,2,3)"),
        ("bg-type", "E"),
        ("homogeneity-scan", "--directions", "3,2,0;1,0,0", "--points", "1,I"),
        ("moduli-eq", "1", "0", "0", "2", "0", "0"),
        ("moduli-eq", "3", "2", "0", "3", "2", "1"),
        ("orbit", "0", "I", "1/2I", "3I"),
        ("classify-orbit", "--branch", "neg", "--nu", "0", "--sigma", "2"),
        ("sweep", "--branch", "pos", "--range", "-1:1:1"),
        ("aut-dim", "Q(3,2,0)", "--max-weight", "2", "--per-weight"),
        ("verify-paper", "--only", "5"),
    ],
)
def test_reports_validate(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == 0 and rep["ok"]
    assert rep["command"] == argv[0]


def test_bg_type_text(capsys):
    code, out, _ = run(capsys, "bg-type", "Q(1,2,3)")
    assert code == 0 and "((2,1),(3,1),(4,1))" in out


def test_moduli_eq_results(capsys):
    _, rep = run_json(capsys, "moduli-eq", "1", "0", "0", "2", "0", "0")
    assert rep["results"]["equivalent"] and rep["results"]["witness"]["w4"] == "2 w4"
    _, rep = run_json(capsys, "moduli-eq", "3", "2", "0", "3", "2", "1")
    assert rep["results"]["equivalent"] is False


def test_orbit_point(capsys):
    _, rep = run_json(capsys, "orbit", "0", "I", "1/2I", "3I")
    r = rep["results"]
    assert r["branch"] == "POS" and r["rank_at_point"] == 6 and r["model"] == "Q_PLUS"
    assert r["params"]["mu"]["exact"] == "1/2"


def test_classify_orbit_by_point(capsys):
    _, rep = run_json(capsys, "classify-orbit", "--point", "0", "0", "0", "-I")
    assert rep["inputs"]["descriptor"] == "OMINUS"
    assert rep["results"]["pencil"] == "F" and rep["results"]["flags"]["holomorphically_degenerate"]


def test_sweep_negative_range_and_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--branch", "neg", "--range", "-1:1:1/2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("nu,sigma") and len(lines) == 26


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_corpus_round_trip(capsys, tmp_path, name):
    path = tmp_path / f"{name}.txt"
    path.write_text(serialize_surface(NAMED[name]))
    _, from_file = run_json(capsys, "bg-type", str(path))
    _, by_name = run_json(capsys, "bg-type", name)
    assert from_file["results"] == by_name["results"]


def test_deterministic(capsys):
    a = run(capsys, "verify-paper", "--only", "1,5", "--json")[1]
    b = run(capsys, "verify-paper", "--only", "1,5", "--json")[1]
    assert a == b


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["orbit", "0", "I"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["sweep", "--branch", "xyz", "--range", "0:1:1"])
    assert e.value.code == 2
    code, _, err = run(capsys, "bg-type", "Q(0,0,0)")
    assert code == 2 and "InvalidParams" in err
    code, _, err = run(capsys, "bg-type", "Q(1,0,0)", "--points", "1")
    assert code == 0


def test_computational_error(capsys):
    code, _, err = run(capsys, "aut-dim", "Q(1,0,0)", "--max-weight", "9")
    assert code == 1 and "CapExceeded" in err
    code, _, err = run(capsys, "bg-type", "Q(1,0,0)", "--cap", "2")
    assert code == 1 and "Inconclusive" in err
