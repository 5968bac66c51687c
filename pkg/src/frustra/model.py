"""Model parameters, momentum grids, dispersion, and phase classification.

The spin ring couples L sites with an anisotropic XY exchange, a symmetric
non-collinear coupling of strength delta that makes the Hamiltonian
non-Hermitian (yet real in the spin basis), and a transverse field h.  After
the fermion mapping everything is controlled by the two pairing gaps

    delta_alpha = gamma + delta,      delta_beta = gamma - delta,

the single-mode function f(q) = (cos q - h)^2 + delta_alpha*delta_beta*sin^2 q,
and the quasiparticle dispersion omega(q) = sqrt(f(q)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, ParameterError

# |h| - 1 within this tolerance counts as the critical line.
CRITICAL_FIELD_TOL = 1e-12


class SiteParity(Enum):
    ODD = "O"
    EVEN = "E"


class FermionParity(Enum):
    ODD = "o"
    EVEN = "e"


@dataclass(frozen=True)
class Channel:
    """One of the four (site parity, fermion-number parity) sectors."""

    site_parity: SiteParity
    fermion_parity: FermionParity

    @property
    def label(self) -> str:
        return f"({self.site_parity.value},{self.fermion_parity.value})"


ODD_ODD = Channel(SiteParity.ODD, FermionParity.ODD)
ODD_EVEN = Channel(SiteParity.ODD, FermionParity.EVEN)
EVEN_ODD = Channel(SiteParity.EVEN, FermionParity.ODD)
EVEN_EVEN = Channel(SiteParity.EVEN, FermionParity.EVEN)
CHANNELS = (ODD_ODD, ODD_EVEN, EVEN_ODD, EVEN_EVEN)


def site_parity_of(L: int) -> SiteParity:
    return SiteParity.ODD if L % 2 else SiteParity.EVEN


def channels_for_length(L: int) -> tuple[Channel, Channel]:
    """The (fermion-odd, fermion-even) channels matching the parity of L."""
    if L % 2:
        return ODD_ODD, ODD_EVEN
    return EVEN_ODD, EVEN_EVEN


@dataclass(frozen=True)
class ModelParams:
    """Couplings and chain length; the pairing gaps are derived, never stored.

    L must be at least 3: on a 2-site ring the two bonds coincide and the
    periodic Hamiltonian double-counts them.
    """

    L: int
    gamma: float
    delta: float
    h: float

    def __post_init__(self) -> None:
        if not isinstance(self.L, int) or self.L < 3:
            raise ParameterError(f"chain length must be an integer >= 3, got {self.L!r}")
        for name in ("gamma", "delta", "h"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")

    @property
    def delta_alpha(self) -> float:
        return self.gamma + self.delta

    @property
    def delta_beta(self) -> float:
        return self.gamma - self.delta

    @property
    def gap_product(self) -> float:
        return self.delta_alpha * self.delta_beta


class PhaseKind(Enum):
    KINK_PLUS = "kink_plus"
    KINK_MINUS = "kink_minus"
    CRITICAL = "critical"
    PARAMAGNETIC = "paramagnetic"
    T_BREAKING = "t_breaking"


@dataclass(frozen=True)
class PhaseLabel:
    kind: PhaseKind
    winding_hint: int | None


@dataclass(frozen=True)
class MomentumGrid:
    """The L allowed wave numbers of one channel, with special-mode flags.

    values is ascending and closed under q -> -q except for the special
    modes q = 0 and q = pi; paired holds one positive representative per
    +-q pair.
    """

    channel: Channel
    values: tuple[float, ...]
    has_zero: bool
    has_pi: bool
    paired: tuple[float, ...]


def momentum_grid(L: int, channel: Channel) -> MomentumGrid:
    """Allowed momenta for a channel: 2k*pi/L in the fermion-odd (periodic)
    channels, (2k+1)*pi/L in the fermion-even (anti-periodic) ones.

    Values are generated from integer multiples so that +-q pairs are exact
    float negations of each other.
    """
    if L < 3:
        raise ParameterError(f"chain length must be >= 3, got {L}")
    if channel.site_parity is not site_parity_of(L):
        raise ParameterError(
            f"channel {channel.label} does not match the parity of L={L}"
        )
    if channel.fermion_parity is FermionParity.ODD:
        # periodic: even multiples of pi/L, including 0; includes pi iff L even
        multiples = [2 * k for k in range(-((L - 1) // 2), L // 2 + 1)]
    else:
        # anti-periodic: odd multiples of pi/L; includes pi iff L odd
        if L % 2:
            ks = range(-((L - 1) // 2), (L - 1) // 2 + 1)
        else:
            ks = range(-(L // 2), L // 2)
        multiples = [2 * k + 1 for k in ks]
    values = tuple(m * math.pi / L for m in multiples)
    has_zero = 0 in multiples
    has_pi = L in multiples
    paired = tuple(m * math.pi / L for m in multiples if 0 < m < L)
    return MomentumGrid(channel, values, has_zero, has_pi, paired)


def reality_function(params: ModelParams, q: float) -> float:
    """f(q) = (cos q - h)^2 + delta_alpha*delta_beta*sin^2 q; real for real couplings."""
    c = math.cos(q) - params.h
    s = math.sin(q)
    return c * c + params.gap_product * s * s


def dispersion(params: ModelParams, q: float) -> complex:
    """Quasiparticle energy omega(q) = sqrt(f(q)).

    f(q) is real, so the branch is fixed explicitly: non-negative real for
    f >= 0 and +i*sqrt(-f) for f < 0.  Level signs come from mode occupation,
    never from a complex square-root cut.
    """
    f = reality_function(params, q)
    if f >= 0.0:
        return complex(math.sqrt(f), 0.0)
    return complex(0.0, math.sqrt(-f))


def reality_minimum(params: ModelParams) -> float:
    """Minimum of f(q) over (-pi, pi], evaluated from the closed-form candidates.

    Writing f in terms of c = cos q, the candidates are the endpoints c = +-1
    and, when the gap product differs from 1 and the stationary cosine
    h/(1 - gap_product) lies in [-1, 1], the interior stationary value.
    """
    h = params.h
    p = params.gap_product
    best = min((1.0 - h) ** 2, (1.0 + h) ** 2)
    if p != 1.0:
        c_star = h / (1.0 - p)
        if abs(c_star) <= 1.0:
            best = min(best, p * (p + h * h - 1.0) / (p - 1.0))
    return best


def classify_phase(params: ModelParams) -> PhaseLabel:
    """Phase of the coupling point (independent of L).

    kink (+/-): both gaps positive/negative with |h| < 1; critical: positive
    gap product on |h| = 1; paramagnetic: gap_product + h^2 > 1 with |h| > 1;
    everything else breaks the antiunitary symmetry and the spectrum turns
    complex.
    """
    da, db, h = params.delta_alpha, params.delta_beta, params.h
    p = da * db
    if abs(abs(h) - 1.0) <= CRITICAL_FIELD_TOL and p > 0.0:
        return PhaseLabel(PhaseKind.CRITICAL, None)
    if da > 0.0 and db > 0.0 and abs(h) < 1.0:
        return PhaseLabel(PhaseKind.KINK_PLUS, 1)
    if da < 0.0 and db < 0.0 and abs(h) < 1.0:
        return PhaseLabel(PhaseKind.KINK_MINUS, -1)
    if p + h * h > 1.0 and abs(h) > 1.0:
        return PhaseLabel(PhaseKind.PARAMAGNETIC, 0)
    return PhaseLabel(PhaseKind.T_BREAKING, None)


def hermitian_counterpart(params: ModelParams) -> ModelParams:
    """Hermitian model with the same spectrum: both gaps replaced by their
    geometric mean.  Requires a positive gap product."""
    p = params.gap_product
    if p <= 0.0:
        raise DomainError(
            f"gap product {p} is not positive; no real geometric mean exists"
        )
    return ModelParams(L=params.L, gamma=math.sqrt(p), delta=0.0, h=params.h)
