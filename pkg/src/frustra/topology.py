"""Bloch-vector loop, winding number, and trajectory export.

The momentum-space Hamiltonian is h(q).sigma with a complex Bloch vector:
h_x = -i*delta*sin q is purely imaginary, h_y = gamma*sin q and
h_z = cos q - h are real.  Its bilinear square h.h equals f(q), so for a
positive gap product the loop collapses onto an effective real ellipse
(cos q - h, sqrt(gap_product)*sin q) whose signed rotation number about the
origin, times sgn(delta_alpha), is the winding number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularLoopError
from .model import ModelParams, reality_function

MIN_WINDING_GRID = 64
MIN_TRAJECTORY_SAMPLES = 16


@dataclass(frozen=True)
class BlochSample:
    """Raw (unnormalized) Bloch vector at one momentum."""

    q: float
    hx: complex
    hy: float
    hz: float
    norm: complex


@dataclass(frozen=True)
class Trajectory:
    """Normalized Bloch loop h(q)/omega(q) over one period.

    Components are complex arrays; the real and imaginary parts are the two
    curves of the trajectory plots.
    """

    q: np.ndarray
    hx: np.ndarray
    hy: np.ndarray
    hz: np.ndarray

    @property
    def closed(self) -> bool:
        first = np.array([self.hx[0], self.hy[0], self.hz[0]])
        last = np.array([self.hx[-1], self.hy[-1], self.hz[-1]])
        return bool(np.abs(first - last).max() < 1e-12)


def bloch_vector(params: ModelParams, q: float) -> BlochSample:
    """Bloch components at q and their bilinear norm sqrt(h.h) = omega(q)."""
    s = math.sin(q)
    f = reality_function(params, q)
    norm = complex(math.sqrt(f), 0.0) if f >= 0.0 else complex(0.0, math.sqrt(-f))
    return BlochSample(
        q=q,
        hx=complex(0.0, -params.delta * s),
        hy=params.gamma * s,
        hz=math.cos(q) - params.h,
        norm=norm,
    )


def winding_number(params: ModelParams, n_grid: int = 4096) -> tuple[float, int]:
    """Signed rotations of the effective planar loop about the origin.

    Trapezoidal quadrature of (x y' - y x')/(x^2 + y^2) on a uniform closed
    grid (spectrally accurate for this smooth periodic integrand), times
    sgn(delta_alpha).  Requires a positive gap product; raises when the loop
    passes through the origin (|h| on the critical line).
    """
    if n_grid < MIN_WINDING_GRID:
        raise ParameterError(f"n_grid must be >= {MIN_WINDING_GRID}, got {n_grid}")
    p = params.gap_product
    if p <= 0.0:
        raise ParameterError(
            f"winding number needs a positive gap product, got {p}"
        )
    h = params.h
    if abs(abs(h) - 1.0) <= 1e-12:
        raise SingularLoopError(f"loop passes through the origin at |h| = 1 (h={h})")
    q = np.linspace(-math.pi, math.pi, n_grid, endpoint=False)
    cos_q = np.cos(q)
    f = (cos_q - h) ** 2 + p * np.sin(q) ** 2
    if f.min() <= 0.0:
        raise SingularLoopError("f(q) vanishes on the grid; loop touches the origin")
    s = math.sqrt(p)
    # (x y' - y x')/(x^2+y^2) with x = cos q - h, y = s sin q
    integrand = s * (1.0 - h * cos_q) / f
    value = math.copysign(1.0, params.delta_alpha) * float(integrand.mean())
    return value, int(round(value))


def trajectory(params: ModelParams, n_samples: int = 256) -> Trajectory:
    """Normalized Bloch loop sampled on [0, 2pi] inclusive (closed)."""
    if n_samples < MIN_TRAJECTORY_SAMPLES:
        raise ParameterError(
            f"n_samples must be >= {MIN_TRAJECTORY_SAMPLES}, got {n_samples}"
        )
    q = np.linspace(0.0, 2.0 * math.pi, n_samples)
    cos_q = np.cos(q)
    sin_q = np.sin(q)
    f = (cos_q - params.h) ** 2 + params.gap_product * sin_q**2
    om = np.sqrt(f.astype(complex))
    if np.abs(om).min() == 0.0:
        raise SingularLoopError("omega(q) vanishes on a sample; cannot normalize the loop")
    return Trajectory(
        q=q,
        hx=-1j * params.delta * sin_q / om,
        hy=params.gamma * sin_q / om,
        hz=(cos_q - params.h) / om,
    )
