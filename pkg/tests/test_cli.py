import json

import pytest

from psikit.cli import main, parse_alpha
from psikit.corpus import FIXTURE_ENV, fixture_dir, fixtures_run
from psikit.ncmodel import dumps_model, load_model, validate


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def run_json(capsys, *argv):
    status, out, err = run(capsys, *argv, "--format", "json")
    return status, json.loads(out)


def test_psi_curve_cusp(capsys):
    status, data = run_json(capsys, "psi-curve", "--poly", "y^2 - x^3")
    assert status == 0
    assert data["psi"] == -1 and data["mu"] == 2 and data["milnor_oracle"] == 2
    assert [(r["m"], r["a"], r["r"]) for r in data["graph"]] == [(2, 1, 1), (3, 2, 1), (6, 4, 3)]
    assert data["seed"] == 0


def test_model_psi_three_lines(capsys):
    status, data = run_json(capsys, "model-psi", "--in", "fixtures/three_lines.json")
    assert status == 0
    assert {r["point"]: r["value"] for r in data["psi"]} == {"p": 0, "g": 2}


def test_check_invariance(capsys):
    status, data = run_json(capsys, "check-invariance", "--in", "fixtures/cusp.json", "--seed", "7", "--rounds", "100")
    assert status == 0 and data["ok"] and data["rounds"] == 100 and data["seed"] == 7


def test_fixtures_run(capsys):
    status, data = run_json(capsys, "fixtures-run")
    assert status == 0 and data["ok"]
    rows = {(r["fixture"], r["quantity"]): r for r in data["rows"]}
    assert rows[("cone_3", "Psi total mod T")]["computed"] == "2*u^-1 + 5 + 2*u"
    assert rows[("a_chain_5", "psi(p)")]["pass"]
    assert rows[("smooth_point", "mu(p)")]["computed"] == "0"


def test_fixtures_rows_cover_every_fixture():
    assert {r.fixture for r in fixtures_run()} == {p.stem for p in fixture_dir().glob("*.json")}


def test_csm_check_corpus(capsys):
    status, data = run_json(capsys, "csm-check")
    assert status == 0 and data["ok"]
    assert all(r["equal"] for r in data["curves"])


def test_milnor(capsys):
    status, data = run_json(capsys, "milnor", "--poly", "y^3-x^4")
    assert status == 0 and data["mu_oracle"] == data["mu_from_psi"] == data["mu_behrend"] == 6


def test_model_motivic_and_behrend(capsys):
    status, data = run_json(capsys, "model-motivic", "--in", "cone_3.json")
    assert status == 0 and data["total_psi_mod_T"] == "2*u^-1 + 5 + 2*u"
    status, data = run_json(capsys, "model-motivic", "--in", "cusp.json", "--alpha", "eps:3", "--at", "p")
    assert [r["psi_mod_T"] for r in data["fibers"]] == ["1"]
    status, data = run_json(capsys, "model-behrend", "--in", "cusp.json")
    assert data["points"] == [{"point": "p", "mu": 2, "unit": 1}]


def test_model_blowup_round_trip(capsys, tmp_path):
    out = tmp_path / "blown.json"
    status, data = run_json(capsys, "model-blowup", "--in", "cusp.json", "--seed", "4", "--out", str(out))
    assert status == 0 and data["valid"]
    model = load_model(out)
    assert validate(model) == []
    assert dumps_model(model) == out.read_text(encoding="utf-8")
    status, again = run_json(capsys, "model-psi", "--in", str(out))
    assert {r["point"]: r["value"] for r in again["psi"]} == {"p": -1}


def test_model_blowup_with_center_file(capsys, tmp_path):
    center = tmp_path / "c.json"
    center.write_text(json.dumps({"codim": 2, "contains": ["E3", "X"], "pieces": [{"extra": [], "at": "p", "class": [[0, 0, 1]]}]}))
    status, data = run_json(capsys, "model-blowup", "--in", "cusp.json", "--center", str(center), "--new-id", "F")
    assert status == 0 and data["new_component"] == {"id": "F", "mult": 7, "discrepancy": 5}


@pytest.mark.parametrize("argv", [
    ("psi-curve", "--poly", "y^2 - x^3"),
    ("model-psi", "--in", "three_lines_coplanar.json", "--alpha", "table:1=4,default=-1"),
    ("fixtures-run",),
    ("csm-check", "--poly", "y^2*z-x^3"),
])
def test_text_and_json_carry_same_numbers(capsys, argv):
    _, text, _ = run(capsys, *argv)
    _, data = run_json(capsys, *argv)

    def leaves(x):
        if isinstance(x, dict):
            for v in x.values():
                yield from leaves(v)
        elif isinstance(x, list):
            for v in x:
                yield from leaves(v)
        elif not isinstance(x, bool) and x is not None:
            yield str(x)

    for leaf in leaves(data):
        assert leaf in text


@pytest.mark.parametrize("argv,needle", [
    (("psi-curve", "--poly", "y^2 - x^^3"), "PolynomialSyntaxError"),
    (("psi-curve", "--poly", "y^2-2*x^2"), "IrrationalInfinitelyNearPoint"),
    (("psi-curve", "--poly", "y^2-x^41", "--max-blowups", "3"), "MaxIterations"),
    (("csm-check", "--poly", "y*(y*z-x^2+2*z^2)"), "IrrationalSingularPoint"),
    (("model-psi", "--in", "missing.json"), "FileNotFoundError"),
    (("model-psi", "--in", "cusp.json", "--alpha", "wat"), "usage error"),
    (("model-behrend", "--in", "a_chain_2.json"), "ModelError"),
    (("psi-curve",), "usage error"),
    (("psi-curve", "--unknown"), "usage error"),
    (("nonsense",), "usage error"),
    ((), "usage error"),
])
def test_errors_are_typed_and_exit_two(capsys, argv, needle):
    status, out, err = run(capsys, *argv)
    assert status == 2
    assert needle in err and "Traceback" not in err


def test_fixture_env_override(capsys, tmp_path, monkeypatch):
    (tmp_path / "cusp.json").write_text((fixture_dir() / "cusp.json").read_text())
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    assert fixture_dir() == tmp_path
    status, data = run_json(capsys, "model-psi", "--in", "cusp.json")
    assert status == 0
    status, _, err = run(capsys, "fixtures-run")
    assert status == 2 and "not found" in err


def test_check_failure_exits_one(capsys, monkeypatch):
    from psikit import cli
    from psikit.corpus import FixtureRow
    monkeypatch.setattr(cli, "fixtures_run", lambda: [FixtureRow("x", "q", "1", "2", False)])
    status, _, _ = run(capsys, "fixtures-run")
    assert status == 1


def test_parse_alpha():
    assert parse_alpha(None)(7) == 7
    assert parse_alpha("const:2")(9) == 2
    assert parse_alpha("eps:3")(3) == 1 and parse_alpha("eps:3")(2) == 0
    a = parse_alpha("table:1=5,2=-1,default=0")
    assert (a(1), a(2), a(8)) == (5, -1, 0)


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "psikit", "psi-curve", "--poly", "y^2-x^2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "psi: 0" in proc.stdout
