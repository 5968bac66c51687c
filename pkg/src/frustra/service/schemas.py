"""Request/response models of the compute service."""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator


class SweepAxis(BaseModel):
    """Uniform sweep over h or 1/h."""

    kind: Literal["h", "inv_h"] = "inv_h"
    start: float
    stop: float
    count: int = Field(ge=2)

    def values(self) -> list[float]:
        return np.linspace(self.start, self.stop, self.count).tolist()


class GridAxis(BaseModel):
    """Axis given either as explicit values or as a uniform range."""

    values: list[float] | None = None
    start: float | None = None
    stop: float | None = None
    count: int | None = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _one_form(self) -> "GridAxis":
        has_range = None not in (self.start, self.stop, self.count)
        if (self.values is None) == (not has_range):
            raise ValueError("give either explicit values or start/stop/count")
        if self.values is not None and len(self.values) < 2:
            raise ValueError("axis needs at least 2 values")
        return self

    def resolve(self) -> list[float]:
        if self.values is not None:
            return list(self.values)
        return np.linspace(self.start, self.stop, self.count).tolist()


class Meta(BaseModel):
    command: str
    tool: str = "frustra"
    version: str
    params: dict
    grid: dict = Field(default_factory=dict)


class SpectrumRequest(BaseModel):
    # the enumeration cap (L <= 16) is enforced by the core and surfaces as
    # a capacity error, not a validation error
    L: int = Field(ge=3)
    gamma: float
    delta: float
    axis: SweepAxis


class SpectrumResponse(BaseModel):
    meta: Meta
    x: list[float]
    levels_re: list[list[float]]
    levels_im: list[list[float]]


class WindingRequest(BaseModel):
    gamma: float
    delta: float
    axis: SweepAxis
    n_grid: int = Field(default=10000, ge=64)


class WindingResponse(BaseModel):
    meta: Meta
    x: list[float]
    value: list[float | None]
    rounded: list[int | None]


class BlochRequest(BaseModel):
    gamma: float
    delta: float
    h: float
    n_samples: int = Field(default=256, ge=16)


class BlochResponse(BaseModel):
    meta: Meta
    q: list[float]
    hx_re: list[float]
    hx_im: list[float]
    hy_re: list[float]
    hy_im: list[float]
    hz_re: list[float]
    hz_im: list[float]
    closed: bool


class PhaseDiagramRequest(BaseModel):
    gamma: float = 1.0
    L: int = Field(default=11, ge=3)
    engine: Literal["analytic", "ed"] = "analytic"
    h_axis: GridAxis
    delta_axis: GridAxis


class PhaseCells(BaseModel):
    h: list[float]
    delta: list[float]
    im_ground: list[float]
    phase: list[str]


class BoundaryCurveModel(BaseModel):
    label: str
    delta: list[float]
    h: list[float]


class PhaseDiagramResponse(BaseModel):
    meta: Meta
    cells: PhaseCells
    boundaries: list[BoundaryCurveModel]


class VerifyPoint(BaseModel):
    # the channel-match cap (L <= 12) is enforced by the core as a capacity error
    L: int = Field(ge=3)
    gamma: float
    delta: float
    h: float


class VerifyRequest(BaseModel):
    points: list[VerifyPoint] = Field(min_length=1)
    tolerance: float | None = None


class MatchReportModel(BaseModel):
    point: VerifyPoint
    n_levels: int
    max_residual: float
    unmatched: int
    tolerance: float
    channel_breakdown: dict[str, float]
    passed: bool


class VerifyResponse(BaseModel):
    meta: Meta
    reports: list[MatchReportModel]
    all_pass: bool


class GapScanRequest(BaseModel):
    gamma: float
    delta: float
    h: float
    L_values: list[int] = Field(min_length=1)


class GapScanResponse(BaseModel):
    meta: Meta
    L: list[int]
    gap: list[float]
    ground_re: list[float]
    ground_im: list[float]


class HealthResponse(BaseModel):
    status: str
    version: str
