"""Command-line client for the verification suites.

By default the suites run in-process through the same layer the HTTP
service exposes; with ``--server`` the CLI becomes a thin HTTP client of a
running instance.  Exit code 0 means every check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.request
from importlib import resources

from pydantic import ValidationError

from . import __version__
from .runner import UnknownSuiteError, run_suites
from .schemas import Report, Scenario, report_to_csv, report_to_json
from .suites import SUITE_NAMES


def default_scenario() -> Scenario:
    text = resources.files("nclab").joinpath("scenarios/default.json").read_text()
    return Scenario.model_validate_json(text)


def _load_scenario(path: str | None) -> Scenario:
    if path is None:
        return default_scenario()
    with open(path, "r", encoding="utf-8") as fh:
        return Scenario.model_validate_json(fh.read())


def _post_to_server(server: str, scenario: Scenario, parallel: bool) -> Report:
    payload = json.dumps(
        {"scenario": scenario.model_dump(by_alias=True), "parallel": parallel}
    ).encode()
    req = urllib.request.Request(
        server.rstrip("/") + "/run",
        data=payload,
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    with urllib.request.urlopen(req) as resp:
        return Report.model_validate_json(resp.read())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nclab",
        description="Run operator-algebra verification suites and emit reports.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run",
        help="run suites against a scenario",
        description=(
            "Run the named suites (or the scenario's own list; 'all' expands "
            "to the full registry) and print the report."
        ),
    )
    run_p.add_argument("names", nargs="*", metavar="SUITE",
                       help=f"suite names; one of {', '.join(SUITE_NAMES)} or 'all'")
    run_p.add_argument("--scenario", metavar="PATH",
                       help="scenario JSON file (default: the bundled scenario)")
    run_p.add_argument("--suite", action="append", default=[], metavar="NAME",
                       help="additional suite to run (repeatable)")
    run_p.add_argument("--seed", type=int, metavar="U64",
                       help="override the scenario seed")
    run_p.add_argument("--format", choices=("json", "csv"), default="json",
                       help="report format (default json)")
    run_p.add_argument("--tol-scale", type=float, metavar="X",
                       help="global tolerance multiplier (slow/fast machines)")
    run_p.add_argument("--parallel", action="store_true",
                       help="run independent suites concurrently")
    run_p.add_argument("--out", metavar="PATH", help="write the report to a file")
    run_p.add_argument("--server", metavar="URL",
                       help="POST the scenario to a running service instead "
                            "of computing in-process")

    sub.add_parser("suites", help="list registered suites")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "suites":
        for name in SUITE_NAMES:
            print(name)
        return 0

    try:
        scenario = _load_scenario(args.scenario)
        overrides = {}
        names = list(args.names) + list(args.suite)
        if names:
            overrides["suites"] = names
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.tol_scale is not None:
            overrides["tol_scale"] = args.tol_scale
        if overrides:
            data = scenario.model_dump(by_alias=True)
            data.update(overrides)
            scenario = Scenario.model_validate(data)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"]) or "<root>"
            print(f"error: scenario.{loc}: {err['msg']}", file=sys.stderr)
        return 2

    try:
        if args.server:
            report = _post_to_server(args.server, scenario, args.parallel)
        else:
            report = run_suites(scenario, parallel=args.parallel)
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = report_to_json(report) if args.format == "json" else report_to_csv(report)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report to {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0 if report.overall else 1


if __name__ == "__main__":
    sys.exit(main())
