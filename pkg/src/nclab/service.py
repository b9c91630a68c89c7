"""FastAPI front end: the verification suites behind a small HTTP surface.

POST /run           run the suites selected by a scenario document
POST /suites/{name} run one suite with the posted scenario
GET  /suites        list registered suites
GET  /schemas/...   the versioned scenario/report JSON schemas
GET  /health        liveness probe
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .runner import UnknownSuiteError, run_suites
from .schemas import Report, Scenario, report_json_schema, scenario_json_schema
from .suites import SUITE_NAMES

app = FastAPI(
    title="nclab",
    description="Verification suites for operator-algebraic numerics",
    version=__version__,
)


class RunRequest(BaseModel):
    scenario: Scenario
    parallel: bool = False


class SuiteListResponse(BaseModel):
    suites: list[str]
    version: str


class HealthResponse(BaseModel):
    status: str
    version: str


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/suites", response_model=SuiteListResponse)
def list_suites() -> SuiteListResponse:
    return SuiteListResponse(suites=list(SUITE_NAMES), version=__version__)


@app.post("/run", response_model=Report)
def run(request: RunRequest) -> Report:
    try:
        return run_suites(request.scenario, parallel=request.parallel)
    except UnknownSuiteError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/suites/{name}", response_model=Report)
def run_one(name: str, request: RunRequest) -> Report:
    data = request.scenario.model_dump(by_alias=True)
    data["suites"] = [name]
    try:
        scenario = Scenario.model_validate(data)  # re-check seed requirement
        return run_suites(scenario, parallel=False)
    except UnknownSuiteError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/schemas/scenario")
def get_scenario_schema() -> dict:
    return scenario_json_schema()


@app.get("/schemas/report")
def get_report_schema() -> dict:
    return report_json_schema()


def main() -> None:
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8080)


if __name__ == "__main__":
    main()
