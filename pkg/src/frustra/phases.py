"""Phase-diagram scans over (h, delta) and the closed-form region boundaries.

Each cell records |Im E0| of the ground manifold — the numerical criterion
separating the real-spectrum phases from the symmetry-broken region — next to
the coupling-level phase label, which is engine independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import ed, spectrum
from .errors import CapacityError, ParameterError
from .model import ModelParams, PhaseLabel, classify_phase
from .util import parallel_map

ED_SCAN_CAP = 14


class Engine(Enum):
    ANALYTIC = "analytic"
    ED = "ed"


@dataclass(frozen=True)
class ScanSpec:
    """Grid over (h, delta) at fixed gamma and L.

    Cells are produced row-major with delta varying slowest.
    """

    gamma: float
    h_values: tuple[float, ...]
    delta_values: tuple[float, ...]
    L: int = 11
    engine: Engine = Engine.ANALYTIC

    def __post_init__(self) -> None:
        if len(self.h_values) < 2 or len(self.delta_values) < 2:
            raise ParameterError("scan axes need at least 2 values each")
        if self.engine is Engine.ED and self.L > ED_SCAN_CAP:
            raise CapacityError(f"ED scan engine capped at L={ED_SCAN_CAP}, got L={self.L}")


@dataclass(frozen=True)
class ScanCell:
    h: float
    delta: float
    im_ground: float
    phase: PhaseLabel


@dataclass(frozen=True)
class BoundaryCurve:
    label: str
    deltas: np.ndarray
    hs: np.ndarray


def axis_values(start: float, stop: float, count: int) -> tuple[float, ...]:
    if count < 2:
        raise ParameterError(f"axis count must be >= 2, got {count}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ParameterError("axis endpoints must be finite")
    return tuple(np.linspace(start, stop, count).tolist())


def _cell(engine: Engine, params: ModelParams) -> float:
    if engine is Engine.ANALYTIC:
        return abs(spectrum.ground_energy(params).imag)
    _, im_ground = ed.ground_energy(params)
    return im_ground


def scan(spec: ScanSpec) -> list[ScanCell]:
    """One ScanCell per grid point, deterministic row-major order."""
    points = [
        ModelParams(L=spec.L, gamma=spec.gamma, delta=d, h=h)
        for d in spec.delta_values
        for h in spec.h_values
    ]
    ims = parallel_map(lambda p: _cell(spec.engine, p), points)
    return [
        ScanCell(h=p.h, delta=p.delta, im_ground=im, phase=classify_phase(p))
        for p, im in zip(points, ims)
    ]


def boundary_curves(
    gamma: float,
    delta_min: float = -2.0,
    delta_max: float = 2.0,
    n_points: int = 401,
) -> list[BoundaryCurve]:
    """Sampled phase boundaries in the (delta, h) plane at fixed gamma.

    |h| = 1 bounds the kink phases while the gap product gamma^2 - delta^2
    stays positive; gamma^2 - delta^2 + h^2 = 1 bounds the paramagnetic
    region where |h| > 1.
    """
    deltas = np.linspace(delta_min, delta_max, n_points)
    curves: list[BoundaryCurve] = []
    inside = np.abs(deltas) <= abs(gamma)
    if inside.any():
        for sign, tag in ((1.0, "critical_h_plus"), (-1.0, "critical_h_minus")):
            curves.append(
                BoundaryCurve(
                    label=tag,
                    deltas=deltas[inside],
                    hs=np.full(int(inside.sum()), sign),
                )
            )
    outside = deltas**2 >= gamma**2
    if outside.any():
        hs = np.sqrt(1.0 - gamma**2 + deltas[outside] ** 2)
        for sign, tag in ((1.0, "reality_h_plus"), (-1.0, "reality_h_minus")):
            curves.append(
                BoundaryCurve(label=tag, deltas=deltas[outside], hs=sign * hs)
            )
    return curves
