"""Exact solution and brute-force verification of a frustrated
non-Hermitian XY ring: spectra, phases, and band topology."""

from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    FrustraError,
    ParameterError,
    SingularLoopError,
)
from .model import (
    CHANNELS,
    Channel,
    FermionParity,
    ModelParams,
    MomentumGrid,
    PhaseKind,
    PhaseLabel,
    SiteParity,
    channels_for_length,
    classify_phase,
    dispersion,
    hermitian_counterpart,
    momentum_grid,
    reality_function,
    reality_minimum,
)
from .spectrum import (
    BogoliubovCoeffs,
    ChannelConstants,
    LevelDescriptor,
    PairBlock,
    PairChoice,
    SpecialMode,
    SpectrumSet,
    bogoliubov_coeffs,
    channel_constants,
    channel_form_energy,
    enumerate_spectrum,
    ground_energy,
    ground_state,
    low_levels,
    pair_block,
    special_mode_energy,
    spectral_gap,
    verify_bdg_block,
)
from .ed import (
    DenseOperator,
    ParitySector,
    SpinBasisIndex,
    build_hamiltonian,
    eigenvalues,
    parity_sectors,
)
from .verify import MatchReport, channel_match, match_multisets
from .phases import BoundaryCurve, Engine, ScanCell, ScanSpec, boundary_curves, scan
from .topology import BlochSample, Trajectory, bloch_vector, trajectory, winding_number
from .version import __version__

__all__ = [
    "__version__",
    "BlochSample",
    "BogoliubovCoeffs",
    "BoundaryCurve",
    "CapacityError",
    "CHANNELS",
    "Channel",
    "ChannelConstants",
    "ConsistencyError",
    "DenseOperator",
    "DomainError",
    "Engine",
    "FermionParity",
    "FrustraError",
    "LevelDescriptor",
    "MatchReport",
    "ModelParams",
    "MomentumGrid",
    "PairBlock",
    "PairChoice",
    "ParameterError",
    "ParitySector",
    "PhaseKind",
    "PhaseLabel",
    "ScanCell",
    "ScanSpec",
    "SingularLoopError",
    "SiteParity",
    "SpecialMode",
    "SpectrumSet",
    "SpinBasisIndex",
    "Trajectory",
    "bloch_vector",
    "bogoliubov_coeffs",
    "boundary_curves",
    "build_hamiltonian",
    "channel_constants",
    "channel_form_energy",
    "channel_match",
    "channels_for_length",
    "classify_phase",
    "dispersion",
    "eigenvalues",
    "enumerate_spectrum",
    "ground_energy",
    "ground_state",
    "hermitian_counterpart",
    "low_levels",
    "match_multisets",
    "momentum_grid",
    "pair_block",
    "parity_sectors",
    "reality_function",
    "reality_minimum",
    "scan",
    "special_mode_energy",
    "spectral_gap",
    "trajectory",
    "verify_bdg_block",
    "winding_number",
]
