"""Scenario/report schemas, the suite runner, the HTTP service and the CLI
front end."""

import json
import sys

import pytest
from fastapi.testclient import TestClient

from nclab import __version__
from nclab.cli import default_scenario, main
from nclab.runner import run_suites
from nclab.schemas import (
    Report,
    Scenario,
    report_json_schema,
    report_to_csv,
    report_to_json,
    scenario_from_json,
    scenario_json_schema,
)
from nclab.service import app
from nclab.suites import SUITE_NAMES

TINY = {
    "suites": ["paper-examples", "cones"],
    "seed": 9,
    "trials": {"cones": 2},
}


def test_scenario_validation_errors():
    with pytest.raises(ValueError):
        Scenario.model_validate({"suites": ["nonexistent"], "seed": 1})
    with pytest.raises(ValueError):
        Scenario.model_validate({"suites": ["modular"]})  # randomized, no seed
    with pytest.raises(ValueError):
        Scenario.model_validate({"suites": ["all"]})
    # deterministic suite alone needs no seed
    Scenario.model_validate({"suites": ["paper-examples"]})


def test_report_overall_consistency():
    rec = {
        "suite": "s", "check": "c", "lhs": 0.0, "rhs": 0.0,
        "residual": 0.0, "tolerance": 0.0, "passed": True,
    }
    with pytest.raises(ValueError):
        Report.model_validate(
            {
                "records": [rec],
                "overall": False,
                "environment": {"version": "x"},
            }
        )


def test_empty_suite_list_is_passing():
    report = run_suites(Scenario.model_validate({"suites": [], "seed": 0}))
    assert report.overall
    assert report.records == []


def test_runner_determinism_and_parallel():
    scenario = Scenario.model_validate(TINY)
    a = report_to_json(run_suites(scenario), drop_runtime=True)
    b = report_to_json(run_suites(scenario), drop_runtime=True)
    c = report_to_json(run_suites(scenario, parallel=True), drop_runtime=True)
    assert a == b == c


def test_report_json_round_trip_and_csv():
    report = run_suites(Scenario.model_validate(TINY))
    back = Report.model_validate(json.loads(report_to_json(report)))
    assert back == report
    csv_text = report_to_csv(report)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "suite,check,lhs,rhs,residual,tolerance,passed,runtime_ms"
    assert len(lines) == len(report.records) + 1


def test_committed_schemas_match_models():
    from importlib import resources

    base = resources.files("nclab").joinpath("schemas")
    committed = json.loads(base.joinpath("scenario.schema.json").read_text())
    assert committed == scenario_json_schema()
    committed = json.loads(base.joinpath("report.schema.json").read_text())
    assert committed == report_json_schema()
    assert committed["version"] == "1"


def test_default_scenario_covers_everything():
    scenario = default_scenario()
    assert scenario.suites == ["all"]
    assert scenario.seed is not None


def test_service_endpoints():
    client = TestClient(app)
    assert client.get("/health").json()["status"] == "ok"
    assert client.get("/suites").json()["suites"] == list(SUITE_NAMES)
    resp = client.post("/run", json={"scenario": TINY})
    assert resp.status_code == 200
    report = Report.model_validate(resp.json())
    assert len(report.records) > 0
    resp = client.post("/suites/cones", json={"scenario": {"seed": 4, "trials": {"cones": 2}}})
    assert resp.status_code == 200
    assert all(r.suite == "cones" for r in Report.model_validate(resp.json()).records)
    assert client.post("/suites/missing", json={"scenario": {"seed": 4}}).status_code in (404, 422)
    assert client.post("/suites/modular", json={"scenario": {}}).status_code == 422
    assert client.get("/schemas/scenario").json() == scenario_json_schema()
    assert client.get("/schemas/report").json() == report_json_schema()


def test_service_matches_in_process():
    client = TestClient(app)
    scenario = Scenario.model_validate(TINY)
    remote = Report.model_validate(
        client.post("/run", json={"scenario": TINY}).json()
    )
    local = run_suites(scenario)
    assert report_to_json(remote, drop_runtime=True) == report_to_json(
        local, drop_runtime=True
    )


def test_cli_run_and_exit_codes(tmp_path, capsys):
    scn = tmp_path / "scn.json"
    scn.write_text(json.dumps({"suites": ["cones"], "seed": 5, "trials": {"cones": 2}}))
    code = main(["run", "--scenario", str(scn)])
    out = capsys.readouterr().out
    assert code == 0
    report = Report.model_validate(json.loads(out))
    assert report.overall and report.environment.version == __version__

    # failing checks flip the exit code (the geometric-family target form)
    scn.write_text(json.dumps({"suites": ["paper-examples"], "seed": 5}))
    code = main(["run", "--scenario", str(scn)])
    capsys.readouterr()
    assert code == 1

    # positional suite names and --suite merge; seed override works
    scn.write_text(json.dumps({"seed": 5, "trials": {"cones": 2}}))
    code = main(["run", "cones", "--scenario", str(scn), "--seed", "6",
                 "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0 and out.startswith("suite,check,")

    # malformed scenario: path-level diagnostics, exit 2
    scn.write_text(json.dumps({"suites": ["cones"], "seed": -1}))
    code = main(["run", "--scenario", str(scn)])
    err = capsys.readouterr().err
    assert code == 2 and "scenario.seed" in err


def test_cli_writes_file_and_determinism(tmp_path, capsys):
    scn = tmp_path / "scn.json"
    scn.write_text(json.dumps(TINY))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["run", "--scenario", str(scn), "--out", str(out1)]) in (0, 1)
    assert main(["run", "--scenario", str(scn), "--out", str(out2)]) in (0, 1)
    capsys.readouterr()

    def strip_runtime(path):
        data = json.loads(path.read_text())
        for rec in data["records"]:
            rec.pop("runtime_ms")
        return json.dumps(data, sort_keys=True)

    assert strip_runtime(out1) == strip_runtime(out2)


def test_cli_tol_scale_and_suites_listing(capsys):
    assert main(["suites"]) == 0
    out = capsys.readouterr().out.split()
    assert list(SUITE_NAMES) == out


def test_scenario_json_aliases():
    s = scenario_from_json(json.dumps({"lambda": 2.0, "seed": 1, "suites": []}))
    assert s.lam == 2.0


def test_cli_against_live_server(tmp_path, capsys):
    # the thin-client mode: POST the scenario to a running uvicorn instance
    import socket
    import subprocess
    import time
    import urllib.request

    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
    proc = subprocess.Popen(
        [sys.executable, "-m", "uvicorn", "nclab.service:app",
         "--host", "127.0.0.1", "--port", str(port), "--log-level", "error"],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    url = f"http://127.0.0.1:{port}"
    try:
        deadline = time.time() + 15
        while True:
            try:
                with urllib.request.urlopen(url + "/health", timeout=1) as resp:
                    if resp.status == 200:
                        break
            except OSError:
                if time.time() > deadline:
                    pytest.skip("local server did not come up")
                time.sleep(0.2)
        scn = tmp_path / "scn.json"
        scn.write_text(json.dumps(TINY))
        code = main(["run", "--scenario", str(scn), "--server", url])
        remote_out = capsys.readouterr().out
        local_code = main(["run", "--scenario", str(scn)])
        local_out = capsys.readouterr().out
        assert code == local_code

        def strip(text):
            data = json.loads(text)
            for rec in data["records"]:
                rec.pop("runtime_ms")
            return json.dumps(data, sort_keys=True)

        assert strip(remote_out) == strip(local_out)
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_resolver_keeps_registry_order():
    from nclab.runner import resolve_suites

    assert resolve_suites(["kms", "modular", "kms"]) == ["modular", "kms"]
    assert resolve_suites(["all"]) == list(SUITE_NAMES)


def test_kms_suite_with_two_level_hamiltonian_scenario():
    scenario = Scenario.model_validate(
        {
            "algebra": {"blocks": [{"dim": 2, "weight": 1.0}]},
            "hamiltonian": [[[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.3, 0.0]]]],
            "beta": 1.0,
            "suites": ["kms"],
            "seed": 21,
            "trials": {"kms": 5},
        }
    )
    report = run_suites(scenario)
    rec = next(
        r for r in report.records
        if r.check == "boundary-identities-scenario-hamiltonian"
    )
    assert rec.passed and rec.residual <= 1e-10
