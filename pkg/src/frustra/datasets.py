"""Sweep builders behind the service endpoints and figure datasets."""

from __future__ import annotations

import numpy as np

from . import spectrum, topology
from .errors import ParameterError, SingularLoopError
from .model import ModelParams
from .util import parallel_map

# Carrier length for coupling-level operations where L does not enter
# (winding, Bloch loop); ModelParams requires a ring, 3 is the smallest.
_L_IRRELEVANT = 3


def sweep_fields(axis_kind: str, xs: list[float]) -> list[float]:
    """Map sweep coordinates to field values (axis is either h or 1/h)."""
    if axis_kind == "h":
        return list(xs)
    if axis_kind == "inv_h":
        if any(x == 0.0 for x in xs):
            raise ParameterError("1/h sweep cannot include 0")
        return [1.0 / x for x in xs]
    raise ParameterError(f"unknown sweep axis {axis_kind!r}")


def spectrum_sweep(
    L: int, gamma: float, delta: float, axis_kind: str, xs: list[float]
) -> dict:
    """All 2^L levels at every sweep point, each point sorted by (Re, Im)."""
    fields = sweep_fields(axis_kind, xs)

    def levels_at(h: float) -> np.ndarray:
        params = ModelParams(L=L, gamma=gamma, delta=delta, h=h)
        w = spectrum.enumerate_spectrum(params).energies()
        return w[np.lexsort((w.imag, w.real))]

    per_point = parallel_map(levels_at, fields)
    return {
        "x": list(xs),
        "levels_re": [w.real.tolist() for w in per_point],
        "levels_im": [w.imag.tolist() for w in per_point],
    }


def winding_sweep(
    gamma: float, delta: float, axis_kind: str, xs: list[float], n_grid: int = 10000
) -> dict:
    """Winding value and nearest integer per sweep point; None where the loop
    is singular (critical field)."""
    fields = sweep_fields(axis_kind, xs)
    values: list[float | None] = []
    rounded: list[int | None] = []
    for h in fields:
        params = ModelParams(L=_L_IRRELEVANT, gamma=gamma, delta=delta, h=h)
        try:
            value, nearest = topology.winding_number(params, n_grid)
        except SingularLoopError:
            values.append(None)
            rounded.append(None)
        else:
            values.append(value)
            rounded.append(nearest)
    return {"x": list(xs), "value": values, "rounded": rounded}


def bloch_trajectory(gamma: float, delta: float, h: float, n_samples: int) -> dict:
    params = ModelParams(L=_L_IRRELEVANT, gamma=gamma, delta=delta, h=h)
    traj = topology.trajectory(params, n_samples)
    return {
        "q": traj.q.tolist(),
        "hx_re": traj.hx.real.tolist(),
        "hx_im": traj.hx.imag.tolist(),
        "hy_re": traj.hy.real.tolist(),
        "hy_im": traj.hy.imag.tolist(),
        "hz_re": traj.hz.real.tolist(),
        "hz_im": traj.hz.imag.tolist(),
        "closed": traj.closed,
    }


def gap_scan(gamma: float, delta: float, h: float, L_values: list[int]) -> dict:
    """Excitation gap and ground energy as a function of ring length."""
    rows = []
    for L in L_values:
        params = ModelParams(L=L, gamma=gamma, delta=delta, h=h)
        e0 = spectrum.ground_energy(params)
        rows.append((L, spectrum.spectral_gap(params), e0.real, e0.imag))
    return {
        "L": [r[0] for r in rows],
        "gap": [r[1] for r in rows],
        "ground_re": [r[2] for r in rows],
        "ground_im": [r[3] for r in rows],
    }
