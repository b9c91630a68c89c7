"""Pydantic models for scenarios and reports, with stable JSON forms.

The scenario is the single input document of a verification run: the
ambient algebra, optional Hamiltonian data, perturbations, the Lp indices,
the suite selection, the seed, and tolerance/trial overrides.  Reports are
one record per check; a run passes iff every record passed.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

SCHEMA_VERSION = "1"

# suites that draw random samples and therefore require a seed
RANDOMIZED_SUITES = frozenset(
    {
        "lp-inequalities",
        "measurability",
        "modular",
        "cones",
        "relmod-rn",
        "kms",
        "multi-time-bounds",
        "dyson",
        "perturbation",
        "expclass",
    }
)


class BlockSpec(BaseModel):
    dim: int = Field(ge=1)
    weight: float = Field(gt=0)


class AlgebraSpec(BaseModel):
    blocks: list[BlockSpec] = Field(min_length=1)


ComplexEntry = list[float]  # [re, im]
MatrixJson = list[list[ComplexEntry]]
OperatorJson = list[MatrixJson]


class Scenario(BaseModel):
    schema_version: str = SCHEMA_VERSION
    algebra: AlgebraSpec = AlgebraSpec(blocks=[BlockSpec(dim=2, weight=1.0),
                                               BlockSpec(dim=3, weight=0.5)])
    hamiltonian: OperatorJson | None = None
    beta: float = 1.0
    perturbations: list[OperatorJson] = Field(default_factory=list)
    p: float = Field(default=2.0, ge=1.0)
    lam: float = Field(default=1.0, gt=0.0, alias="lambda")
    suites: list[str] = Field(default_factory=list)
    seed: int | None = Field(default=None, ge=0)
    boundary_samples: int = Field(default=1000, ge=1)
    trials: dict[str, int] = Field(default_factory=dict)
    tol_scale: float = Field(default=1.0, gt=0.0)

    model_config = {"populate_by_name": True}

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, names: list[str]) -> list[str]:
        from .suites import SUITE_NAMES

        for name in names:
            if name != "all" and name not in SUITE_NAMES:
                raise ValueError(
                    f"unknown suite {name!r}; known: {sorted(SUITE_NAMES)} or 'all'"
                )
        return names

    @model_validator(mode="after")
    def _seed_for_randomized(self) -> "Scenario":
        selected = set(self.suites)
        if "all" in selected:
            selected = set(RANDOMIZED_SUITES)
        if selected & RANDOMIZED_SUITES and self.seed is None:
            raise ValueError(
                "a seed is mandatory when any randomized suite is selected"
            )
        return self


class CheckRecord(BaseModel):
    suite: str
    check: str
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: float = 0.0


class Environment(BaseModel):
    version: str
    seed: int | None = None


class Report(BaseModel):
    schema_version: str = SCHEMA_VERSION
    records: list[CheckRecord]
    overall: bool
    environment: Environment

    @model_validator(mode="after")
    def _overall_consistent(self) -> "Report":
        expected = all(r.passed for r in self.records)
        if self.overall != expected:
            raise ValueError("overall flag must equal the conjunction of records")
        return self


def report_to_json(report: Report, drop_runtime: bool = False) -> str:
    data = report.model_dump()
    if drop_runtime:
        for rec in data["records"]:
            rec.pop("runtime_ms", None)
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def report_to_csv(report: Report) -> str:
    buf = io.StringIO()
    fields = ["suite", "check", "lhs", "rhs", "residual", "tolerance",
              "passed", "runtime_ms"]
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for rec in report.records:
        writer.writerow(rec.model_dump())
    return buf.getvalue()


def scenario_from_json(text: str) -> Scenario:
    return Scenario.model_validate(json.loads(text))


def scenario_json_schema() -> dict[str, Any]:
    schema = Scenario.model_json_schema()
    schema["version"] = SCHEMA_VERSION
    return schema


def report_json_schema() -> dict[str, Any]:
    schema = Report.model_json_schema()
    schema["version"] = SCHEMA_VERSION
    return schema
