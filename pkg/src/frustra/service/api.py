"""Endpoint implementations: request model in, response model out.

These are plain functions so the CLI can call them in-process; the FastAPI
app in .app adds the HTTP error translation on top.  Responses carry no
timestamps or host state, keeping identical requests byte-reproducible.
"""

from __future__ import annotations

from .. import datasets, phases, verify
from ..model import ModelParams
from ..version import __version__
from . import schemas


def _meta(command: str, params: dict, grid: dict | None = None) -> schemas.Meta:
    return schemas.Meta(
        command=command, version=__version__, params=params, grid=grid or {}
    )


def spectrum(req: schemas.SpectrumRequest) -> schemas.SpectrumResponse:
    data = datasets.spectrum_sweep(
        req.L, req.gamma, req.delta, req.axis.kind, req.axis.values()
    )
    return schemas.SpectrumResponse(
        meta=_meta(
            "spectrum",
            {"L": req.L, "gamma": req.gamma, "delta": req.delta},
            req.axis.model_dump(),
        ),
        **data,
    )


def winding(req: schemas.WindingRequest) -> schemas.WindingResponse:
    data = datasets.winding_sweep(
        req.gamma, req.delta, req.axis.kind, req.axis.values(), req.n_grid
    )
    return schemas.WindingResponse(
        meta=_meta(
            "winding",
            {"gamma": req.gamma, "delta": req.delta, "n_grid": req.n_grid},
            req.axis.model_dump(),
        ),
        **data,
    )


def bloch(req: schemas.BlochRequest) -> schemas.BlochResponse:
    data = datasets.bloch_trajectory(req.gamma, req.delta, req.h, req.n_samples)
    return schemas.BlochResponse(
        meta=_meta(
            "bloch",
            {"gamma": req.gamma, "delta": req.delta, "h": req.h, "n_samples": req.n_samples},
        ),
        **data,
    )


def phase_diagram(req: schemas.PhaseDiagramRequest) -> schemas.PhaseDiagramResponse:
    spec = phases.ScanSpec(
        gamma=req.gamma,
        h_values=tuple(req.h_axis.resolve()),
        delta_values=tuple(req.delta_axis.resolve()),
        L=req.L,
        engine=phases.Engine(req.engine),
    )
    cells = phases.scan(spec)
    curves = phases.boundary_curves(
        req.gamma,
        delta_min=min(spec.delta_values),
        delta_max=max(spec.delta_values),
    )
    return schemas.PhaseDiagramResponse(
        meta=_meta(
            "phase-diagram",
            {"gamma": req.gamma, "L": req.L, "engine": req.engine},
            {
                "h_axis": req.h_axis.model_dump(),
                "delta_axis": req.delta_axis.model_dump(),
            },
        ),
        cells=schemas.PhaseCells(
            h=[c.h for c in cells],
            delta=[c.delta for c in cells],
            im_ground=[c.im_ground for c in cells],
            phase=[c.phase.kind.value for c in cells],
        ),
        boundaries=[
            schemas.BoundaryCurveModel(
                label=c.label, delta=c.deltas.tolist(), h=c.hs.tolist()
            )
            for c in curves
        ],
    )


def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    reports = []
    for point in req.points:
        params = ModelParams(L=point.L, gamma=point.gamma, delta=point.delta, h=point.h)
        report = verify.channel_match(params, tol=req.tolerance)
        reports.append(
            schemas.MatchReportModel(
                point=point,
                n_levels=report.n_levels,
                max_residual=report.max_residual,
                unmatched=report.unmatched,
                tolerance=report.tolerance,
                channel_breakdown=report.channel_breakdown,
                passed=report.passed,
            )
        )
    return schemas.VerifyResponse(
        meta=_meta(
            "verify",
            {"tolerance": req.tolerance, "n_points": len(req.points)},
        ),
        reports=reports,
        all_pass=all(r.passed for r in reports),
    )


def gap_scan(req: schemas.GapScanRequest) -> schemas.GapScanResponse:
    data = datasets.gap_scan(req.gamma, req.delta, req.h, req.L_values)
    return schemas.GapScanResponse(
        meta=_meta(
            "gap-scan",
            {"gamma": req.gamma, "delta": req.delta, "h": req.h},
            {"L_values": req.L_values},
        ),
        **data,
    )


def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)
