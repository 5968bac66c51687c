"""FastAPI application exposing the compute endpoints over HTTP."""

from __future__ import annotations

from contextlib import contextmanager

from fastapi import FastAPI, HTTPException

from ..errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    ParameterError,
    SingularLoopError,
)
from ..version import __version__
from . import api, schemas


@contextmanager
def translated_errors():
    try:
        yield
    except CapacityError as exc:
        raise HTTPException(status_code=413, detail={"error": "capacity", "message": str(exc)})
    except (ParameterError, DomainError, SingularLoopError) as exc:
        raise HTTPException(status_code=422, detail={"error": "parameter", "message": str(exc)})
    except ConsistencyError as exc:
        raise HTTPException(status_code=500, detail={"error": "consistency", "message": str(exc)})


app = FastAPI(
    title="frustra",
    version=__version__,
    description="Exact spectra, phases, and topology of the frustrated non-Hermitian XY ring",
)


@app.get("/api/health", response_model=schemas.HealthResponse)
def get_health() -> schemas.HealthResponse:
    return api.health()


@app.post("/api/spectrum", response_model=schemas.SpectrumResponse)
def post_spectrum(req: schemas.SpectrumRequest) -> schemas.SpectrumResponse:
    with translated_errors():
        return api.spectrum(req)


@app.post("/api/winding", response_model=schemas.WindingResponse)
def post_winding(req: schemas.WindingRequest) -> schemas.WindingResponse:
    with translated_errors():
        return api.winding(req)


@app.post("/api/bloch", response_model=schemas.BlochResponse)
def post_bloch(req: schemas.BlochRequest) -> schemas.BlochResponse:
    with translated_errors():
        return api.bloch(req)


@app.post("/api/phase-diagram", response_model=schemas.PhaseDiagramResponse)
def post_phase_diagram(req: schemas.PhaseDiagramRequest) -> schemas.PhaseDiagramResponse:
    with translated_errors():
        return api.phase_diagram(req)


@app.post("/api/verify", response_model=schemas.VerifyResponse)
def post_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    with translated_errors():
        return api.run_verify(req)


@app.post("/api/gap-scan", response_model=schemas.GapScanResponse)
def post_gap_scan(req: schemas.GapScanRequest) -> schemas.GapScanResponse:
    with translated_errors():
        return api.gap_scan(req)
