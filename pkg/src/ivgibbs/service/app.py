"""FastAPI application exposing the solver, oracle, thermo and scan surfaces."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, EnumerationCapError
from . import handlers
from . import schemas as s


def create_app() -> FastAPI:
    app = FastAPI(
        title="ivgibbs",
        version=__version__,
        description=(
            "Translation-invariant Gibbs measures of the Ising-Vannimenus "
            "model on Cayley trees: fixed-point solving, brute-force "
            "verification, free energy and entropy, parameter scans."
        ),
    )

    @app.exception_handler(EnumerationCapError)
    async def _cap_handler(_, exc):
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.exception_handler(DomainError)
    async def _domain_handler(_, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=s.HealthResponse)
    def health():
        return s.HealthResponse(status="ok", version=__version__)

    @app.post("/solve", response_model=s.SolveResponse)
    def solve(req: s.ParamsIn):
        return handlers.solve(req)

    @app.post("/nonsym", response_model=s.SolveResponse)
    def nonsym(req: s.ParamsIn):
        return handlers.nonsym(req)

    @app.post("/verify", response_model=s.VerifyResponse)
    def verify(req: s.VerifyRequest):
        return handlers.verify(req)

    @app.post("/oracle", response_model=s.OracleResponse)
    def oracle(req: s.OracleRequest):
        return handlers.oracle(req)

    @app.post("/free-energy", response_model=s.ThermoResponse)
    def free_energy(req: s.CurveRequest):
        return handlers.thermo(req)

    @app.post("/entropy", response_model=s.ThermoResponse)
    def entropy(req: s.CurveRequest):
        return handlers.thermo(req)

    @app.post("/scan", response_model=s.ScanResponse)
    def scan(req: s.ScanRequest):
        return handlers.scan(req)

    @app.get("/findings")
    def findings():
        return handlers.findings()

    return app


app = create_app()
