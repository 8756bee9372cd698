import json

import pytest

import formbench.scenarios as scenarios
from formbench.cli import main
from formbench.errors import UnknownScenario
from formbench.models import kodaira, save_model
from formbench.scalars import GaussianRational
from formbench.scenarios import Step, list_scenarios, run_scenario

ALL_IDS = [
    "torus2-gram", "torus4-gram", "torus4-deformed", "bbf-vanishing",
    "kodaira", "kodaira-lambda", "nakamura", "k3-product", "grass-degree",
]


def test_list_scenarios():
    listing = list_scenarios()
    assert [name for name, _ in listing] == ALL_IDS
    assert len(listing) >= 9
    assert listing == list_scenarios()
    assert all(desc for _, desc in listing)


@pytest.mark.parametrize("scenario_id", ALL_IDS)
def test_builtin_scenarios_pass(scenario_id):
    report = run_scenario(scenario_id)
    failures = [step.name for step in report.steps if not step.match]
    assert report.passed, failures
    assert not report.error
    assert report.first_failure() == 0


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        run_scenario("nosuch")


def test_report_json_is_deterministic():
    first = run_scenario("torus4-deformed").to_json()
    second = run_scenario("torus4-deformed").to_json()
    assert first == second
    payload = json.loads(first)
    assert payload["example_id"] == "torus4-deformed"
    assert payload["passed"] is True
    quantity = payload["quantities"][0]
    assert set(quantity) == {"name", "value", "reference", "match", "note"}


def test_step_match_is_exact():
    table_value = GaussianRational(1, 2)
    assert Step("x", table_value, GaussianRational(1, 2)).match
    assert not Step("x", table_value, GaussianRational(1, -2)).match
    # incomparable values fail instead of raising
    assert not Step("x", object(), GaussianRational(1)).match


def test_failure_index(monkeypatch):
    def fake():
        return [
            Step("first", 1, 1),
            Step("second", 1, 2),
            Step("third", 2, 3),
        ]

    monkeypatch.setitem(
        scenarios._SCENARIOS, "fake", ("synthetic failure", fake)
    )
    report = run_scenario("fake")
    assert not report.passed
    assert report.first_failure() == 2


# -- command line ---------------------------------------------------------------


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "torus4-deformed" in out
    assert "grass-degree" in out


def test_cli_run_pass(capsys):
    assert main(["run", "nakamura"]) == 0
    out = capsys.readouterr().out
    assert "result: pass" in out


def test_cli_run_json_deterministic(capsys):
    assert main(["run", "torus2-gram", "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["run", "torus2-gram", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["passed"] is True


def test_cli_run_unknown(capsys):
    assert main(["run", "nosuch"]) == 70
    assert "unknown scenario" in capsys.readouterr().err


def test_cli_run_failure_exit_code(monkeypatch, capsys):
    def fake():
        return [Step("first", 1, 1), Step("second", 1, 2)]

    monkeypatch.setitem(
        scenarios._SCENARIOS, "fake", ("synthetic failure", fake)
    )
    assert main(["run", "fake"]) == 2
    out = capsys.readouterr().out
    assert "FAIL second" in out


def test_cli_model_check(tmp_path, capsys):
    path = tmp_path / "kodaira.json"
    save_model(kodaira(), path)
    assert main(["model", "check", str(path)]) == 0
    out = capsys.readouterr().out
    assert "4 generators" in out
    assert "d(w2) = w1^wb1" in out


def test_cli_model_check_bad_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    assert main(["model", "check", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_cohomology(tmp_path, capsys):
    path = tmp_path / "kodaira.json"
    save_model(kodaira(), path)
    assert main(["cohomology", str(path), "--theory", "de_rham",
                 "--degree", "1"]) == 0
    out = capsys.readouterr().out
    assert "dimension 3" in out
    assert main(["cohomology", str(path), "--theory", "dolbeault",
                 "--degree", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "dimension 2" in out
    assert "w1^wb2" in out


def test_cli_bbf_gram(tmp_path, capsys):
    path = tmp_path / "kodaira.json"
    save_model(kodaira(), path)
    assert main(["bbf", "gram", str(path), "--sigma", "mu*w1^w2",
                 "--normalized"]) == 0
    out = capsys.readouterr().out
    assert "mu = mu" in out
    assert "w1^w2" in out
    rows = [line for line in out.splitlines() if line.strip().startswith("[")]
    assert len(rows) == 4


def test_cli_grass_degree(capsys):
    assert main(["grass-degree", "--n", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [
        "n=2 degree=1 distinguished_order=1",
        "n=3 degree=2 distinguished_order=2",
        "n=4 degree=3 distinguished_order=3",
    ]
    assert main(["grass-degree", "--n", "1"]) == 1


def test_register_scenario(monkeypatch):
    monkeypatch.setattr(scenarios, "_SCENARIOS", dict(scenarios._SCENARIOS))
    scenarios.register_scenario(
        "custom", "a custom check", lambda: [Step("one", 1, 1)]
    )
    assert ("custom", "a custom check") in list_scenarios()
    assert run_scenario("custom").passed
    with pytest.raises(ValueError):
        scenarios.register_scenario("custom", "again", lambda: [])
