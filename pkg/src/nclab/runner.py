"""Suite execution: deterministic per-suite random streams, optional
parallel evaluation, report assembly."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .schemas import Environment, Report, Scenario
from .suites import SUITE_NAMES, SUITES


class UnknownSuiteError(ValueError):
    pass


def resolve_suites(names: list[str]) -> list[str]:
    if "all" in names:
        return list(SUITE_NAMES)
    out = []
    for name in names:
        if name not in SUITES:
            raise UnknownSuiteError(
                f"unknown suite {name!r}; known: {sorted(SUITE_NAMES)}"
            )
        if name not in out:
            out.append(name)
    # keep registry order for reproducible reports
    return [n for n in SUITE_NAMES if n in out]


def _suite_rng(seed: int | None, suite: str) -> np.random.Generator:
    index = SUITE_NAMES.index(suite)
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed or 0, spawn_key=(index,))
    )


def run_suites(scenario: Scenario, parallel: bool = False) -> Report:
    names = resolve_suites(scenario.suites)
    if parallel and len(names) > 1:
        with ThreadPoolExecutor(max_workers=min(len(names), 8)) as pool:
            batches = list(
                pool.map(
                    lambda n: SUITES[n](scenario, _suite_rng(scenario.seed, n)),
                    names,
                )
            )
    else:
        batches = [SUITES[n](scenario, _suite_rng(scenario.seed, n)) for n in names]
    records = [rec for batch in batches for rec in batch]
    return Report(
        records=records,
        overall=all(r.passed for r in records),
        environment=Environment(version=__version__, seed=scenario.seed),
    )
