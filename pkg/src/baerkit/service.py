"""HTTP facade over the suite runner.

The CLI talks to this app in-process by default; `baerkit serve` exposes the
same app over a socket.  Input failures map to 400, contract failures stay
200 with passed=false so clients can distinguish the two.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import runner
from .report import ReportCache
from .ring import StructuralError


class Bounds(BaseModel):
    n: Optional[int] = Field(default=None, ge=0)
    d: Optional[int] = Field(default=None, ge=0)
    window: Optional[int] = Field(default=None, ge=0)
    order_cap: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = None
    monoid: Optional[str] = None


class VerifyRequest(BaseModel):
    suite: str
    spec: str
    alpha: Optional[str] = None
    delta: Optional[str] = None
    bounds: Bounds = Bounds()
    cache_dir: Optional[str] = None
    timing: bool = False


class ClassifyRequest(BaseModel):
    spec: str
    order_cap: Optional[int] = None
    cache_dir: Optional[str] = None
    timing: bool = False


class MineRequest(BaseModel):
    family: str
    predicate: str
    max_order: int = 64
    limit: Optional[int] = None
    cache_dir: Optional[str] = None


class ReportResponse(BaseModel):
    report: dict
    passed: bool


class MineResponse(BaseModel):
    matches: list[dict]
    count: int


class ExplainResponse(BaseModel):
    flag: str
    definition: str


def _cache(cache_dir: Optional[str]) -> ReportCache:
    return ReportCache(cache_dir)


app = FastAPI(title="baerkit", version="0.1.0")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/classify", response_model=ReportResponse)
def classify(req: ClassifyRequest) -> ReportResponse:
    bounds = {"order_cap": req.order_cap} if req.order_cap else None
    try:
        report = runner.run_suite("classify", req.spec, bounds=bounds,
                                  cache=_cache(req.cache_dir), timing=req.timing)
    except (runner.InputError, StructuralError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ReportResponse(report=report, passed=bool(report["passed"]))


@app.post("/verify", response_model=ReportResponse)
def verify(req: VerifyRequest) -> ReportResponse:
    try:
        report = runner.run_suite(
            req.suite, req.spec, req.alpha, req.delta,
            bounds=req.bounds.model_dump(exclude_none=True),
            cache=_cache(req.cache_dir), timing=req.timing,
        )
    except (runner.InputError, StructuralError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ReportResponse(report=report, passed=bool(report["passed"]))


@app.post("/mine", response_model=MineResponse)
def mine(req: MineRequest) -> MineResponse:
    try:
        found = runner.mine(req.family, req.predicate, req.max_order,
                            cache=_cache(req.cache_dir), limit=req.limit)
    except (runner.InputError, StructuralError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return MineResponse(matches=found, count=len(found))


@app.get("/explain/{flag}", response_model=ExplainResponse)
def explain(flag: str) -> ExplainResponse:
    try:
        return ExplainResponse(flag=flag, definition=runner.explain(flag))
    except runner.InputError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
