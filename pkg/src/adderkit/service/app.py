"""FastAPI application exposing build/eval/verify/compare/export."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from . import api
from .schemas import (
    BuildRequest,
    CompareRequest,
    CompareResponse,
    EvalRequest,
    EvalResponse,
    ExportRequest,
    ExportResponse,
    NetlistDoc,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="adderkit",
    version=__version__,
    description="Gate-level adder construction, simulation, verification and depth analysis.",
)


@app.exception_handler(ValueError)
async def _domain_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/build", response_model=NetlistDoc)
def build(req: BuildRequest) -> NetlistDoc:
    return api.build(req)


@app.post("/eval", response_model=EvalResponse)
def eval_netlist(req: EvalRequest) -> EvalResponse:
    return api.run_eval(req)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    return api.run_verify(req)


@app.post("/compare", response_model=CompareResponse)
def compare(req: CompareRequest) -> CompareResponse:
    return api.run_compare(req)


@app.post("/export", response_model=ExportResponse)
def export(req: ExportRequest) -> ExportResponse:
    return api.run_export(req)
