# tests/test_cli.py
import json
import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from coeffkit import cli
from coeffkit.complexes import InternalInconsistency

ROOT = Path(__file__).resolve().parents[1]

def run(args, cwd=ROOT):
    """
    Run the CLI via the module runner to avoid shim/path issues.
    Example: python -m coeffkit.cli compare example:nilprod
    """
    cmd = [sys.executable, "-m", "coeffkit.cli"] + args
    return subprocess.run(cmd, text=True, cwd=cwd, capture_output=True)

def run_ok(args, cwd=ROOT):
    r = run(args, cwd)
    assert r.returncode == 0, (
        f"FAILED: {' '.join(args)}\n"
        f"STDOUT:\n{r.stdout}\n"
        f"STDERR:\n{r.stderr}"
    )
    return r

def run_json(args):
    return json.loads(run_ok(args + ["--format", "json"]).stdout)

def write_model(path: Path, data: dict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data), encoding="utf-8")
    return path

def test_cohomology_of_the_torus():
    out = run_json(["cohomology", "example:torus_4"])
    assert out["betti"] == [1, 4, 6, 4, 1]
    assert out["dims"] == [1, 4, 6, 4, 1]
    assert out["invariant"] is False

def test_cohomology_of_a_shipped_file():
    out = run_json(["cohomology", "data/models/h3z2.json", "--invariant"])
    assert out == {"model": "h3z2", "invariant": True, "dims": [1, 1, 1, 1], "betti": [1, 1, 1, 1]}

def test_compare_ex52_table():
    r = run_ok(["compare", "example:ex52_product", "--invariant", "--expect-iso"])
    lines = r.stdout.strip().splitlines()
    assert lines[-1] == "isomorphic: p=3,4,5,6"
    assert "not isomorphic" not in r.stdout
    assert "verdict" in r.stdout

def test_compare_json_keys_and_values():
    out = run_json(["compare", "example:ex52_product", "--invariant"])
    assert set(out) == {"model", "n", "betti", "coeffective", "tilde", "coker", "verdict", "lefschetz"}
    assert out["n"] == 3
    assert out["coeffective"] == [0, 0, 0, 2, 2, 2, 1]
    assert out["verdict"]["0"] == "out-of-range"
    assert out["verdict"]["6"] == "iso"

def test_compare_single_degree():
    out = run_json(["compare", "example:ex51_solv", "--invariant", "--degree", "3"])
    assert out["coeffective"] == [6]
    assert out["verdict"] == {"3": "iso"}

def test_nilprod_is_not_isomorphic_at_three():
    r = run(["compare", "example:nilprod", "--expect-iso"])
    assert r.returncode == 1
    assert "not isomorphic: p=3" in r.stdout
    assert r.stdout.strip().splitlines()[-1] == "isomorphic: p=4,5,6"
    out = run_json(["compare", "example:nilprod"])
    assert out["verdict"]["3"] == "non-iso"
    assert out["verdict"]["4"] == "iso"
    assert out["coker"][3] == 3

def test_class_status_line():
    r = run_ok(["class-status", "example:nilprod", "--form", "x1^x2^y2^y3"])
    assert r.stdout.strip() == "coeffective: yes; closed: yes; coE-class zero: yes; deRham-class zero: yes"

def test_class_status_unknown_generator():
    r = run(["class-status", "example:nilprod", "--form", "x1^z9"])
    assert r.returncode == 2
    assert "z9" in r.stderr

def test_validate_ok():
    r = run_ok(["validate", "example:ex52_product", "--invariant"])
    assert "OK: model validation passed." in r.stdout
    assert "symplectic: yes (n = 3)" in r.stdout

def test_validate_jacobi_failure(tmp_path):
    path = write_model(tmp_path / "bad.json", {
        "name": "bad", "generators": ["e1", "e2", "e3"],
        "differential": {"e3": "-e1^e2", "e1": "-e1^e3"},
    })
    r = run(["validate", str(path)])
    assert r.returncode == 2
    assert "Jacobi fails on (e1, e2, e3)" in r.stdout

def test_validate_incompatible_weights(tmp_path):
    path = write_model(tmp_path / "w.json", {
        "name": "w", "generators": ["x1", "x2", "x3"], "differential": {"x3": "-x1^x2"},
        "weights": {"x1": {"sign": [0]}, "x2": {"sign": [0]}, "x3": {"sign": [1]}},
    })
    assert run(["validate", str(path)]).returncode == 2

def test_invariant_without_weights():
    r = run(["compare", "example:nilprod", "--invariant"])
    assert r.returncode == 2
    assert r.stderr.startswith("ERROR:")
    assert "weights" in r.stderr

def test_unknown_example():
    r = run(["cohomology", "example:h9"])
    assert r.returncode == 2
    assert "available" in r.stderr

def test_missing_model_file(tmp_path):
    r = run(["cohomology", str(tmp_path / "nope")])
    assert r.returncode == 2
    assert "not found" in r.stderr

def test_product_writes_a_model(tmp_path):
    out = tmp_path / "out" / "ex52.json"
    r = run_ok(["product", "example:h3z2", "example:h3z2", "--symplectic", "x1^y1 + x2^x3 + y2^y3",
                "--name", "ex52_product", "-o", str(out)])
    assert r.stdout.startswith("OK: Wrote product model ex52_product (6 generators)")
    assert out.read_text(encoding="utf-8") == (ROOT / "data" / "models" / "ex52_product.json").read_text(encoding="utf-8")
    again = run_json(["compare", str(out), "--invariant"])
    assert again["coeffective"][3:] == [2, 2, 2, 1]

def test_example_write_dir_matches_shipped_files(tmp_path):
    run_ok(["example", "--write-dir", str(tmp_path)])
    for key in ["h3", "h3z2", "ex52_product", "nilprod", "ex51_solv"]:
        got = (tmp_path / f"{key}.json").read_text(encoding="utf-8")
        assert got == (ROOT / "data" / "models" / f"{key}.json").read_text(encoding="utf-8")

def test_example_list_and_print():
    r = run_ok(["example", "--list"])
    assert "nilprod" in r.stdout.splitlines()
    model = json.loads(run_ok(["example", "h3"]).stdout)
    assert model["differential"] == {"x3": "-x1^x2"}

def test_example_needs_an_action():
    assert run(["example"]).returncode == 2

def test_example_verify():
    r = run_ok(["example", "h3z2", "--verify"])
    assert r.stdout.strip() == "golden h3z2: ok"

def test_fuzz_command():
    r = run_ok(["fuzz", "--dim", "4", "--count", "5", "--seed", "3"])
    assert "failures 0" in r.stdout

def test_les_command():
    r = run_ok(["les", "example:ex51_solv", "--invariant"])
    assert r.stdout.strip().splitlines()[-1] == "exact: yes"

def test_lefschetz_command():
    out = run_json(["lefschetz", "example:torus_4"])
    assert out["lefschetz"]["injective"][:2] == [True, True]
    assert out["lefschetz"]["surjective"][1:] == [True, True, True, True]

def test_config_generator_cap(tmp_path):
    cfg = tmp_path / "settings.yaml"
    cfg.write_text(yaml.safe_dump({"max_generators": 4}), encoding="utf-8")
    r = run(["cohomology", "example:nilprod", "--config", str(cfg)])
    assert r.returncode == 2
    assert "cap" in r.stderr
    run_ok(["cohomology", "example:nilprod", "--config", str(cfg), "--max-gen", "6"])

def test_config_default_format(tmp_path):
    cfg = tmp_path / "settings.yaml"
    cfg.write_text(yaml.safe_dump({"default_format": "json"}), encoding="utf-8")
    out = json.loads(run_ok(["coeffective", "example:torus_4", "--config", str(cfg)]).stdout)
    assert out["coeffective"] == [0, 0, 5, 4, 1]

def test_inclusion_command():
    r = run_ok(["inclusion", "example:ex52_product"])
    assert "hypotheses hold: no; conclusion consistent: yes" in r.stdout

def test_verbose_logs_to_stderr():
    r = run_ok(["cohomology", "example:h3", "-v"])
    assert "DEBUG" in r.stderr

def test_bare_model_name_falls_back_to_shipped_models():
    out = run_json(["cohomology", "examples/torus_4"])
    assert out["betti"] == [1, 4, 6, 4, 1]

def table_rows(stdout: str) -> list[list[int]]:
    rows = [line.split() for line in stdout.splitlines()]
    return [[int(t) for t in row[:5]] for row in rows if row and row[0].isdigit()]

@pytest.mark.parametrize("args", [["example:ex52_product", "--invariant"], ["example:nilprod"]])
def test_compare_table_and_json_agree(args):
    out = run_json(["compare"] + args)
    rows = table_rows(run(["compare"] + args).stdout)
    assert [r[0] for r in rows] == list(range(len(out["betti"])))
    assert [r[1] for r in rows] == out["betti"]
    assert [r[2] for r in rows] == out["coeffective"]
    assert [r[3] for r in rows] == out["tilde"]
    assert [r[4] for r in rows] == out["coker"]

def test_internal_inconsistency_has_its_own_exit_code(monkeypatch, capsys):
    def broken(*a, **k):
        raise InternalInconsistency("coker identity violated at p=2")
    monkeypatch.setattr(cli, "compare", broken)
    assert cli.main(["compare", "example:torus_4"]) == 3
    err = capsys.readouterr().err
    assert err.startswith("INTERNAL ERROR:")
    assert "p=2" in err
