"""Exact many-body levels of the ring from its free-fermion solution.

Every +-q momentum pair carries four states: an even-occupation doublet at
2cos q -+ 2omega(q) and a two-fold odd-occupation level at 2cos q (the per-mode
field constants are already folded in).  The unpaired modes q = 0 and q = pi
contribute 2(+-1 - h)n + h.  A level of the spin model is a choice per pair
and per special mode whose total fermion parity matches the channel; merging
the two channels of matching site parity yields all 2^L levels.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import CapacityError, ConsistencyError, DomainError, ParameterError
from .model import (
    Channel,
    FermionParity,
    ModelParams,
    MomentumGrid,
    channels_for_length,
    dispersion,
    momentum_grid,
    reality_function,
)

# Full enumeration refuses to build more than 2^ENUMERATION_CAP levels.
ENUMERATION_CAP = 16

# Levels whose real parts differ by less than this belong to one manifold.
DEGENERACY_TOL = 1e-8

_LEX = (lambda z: (z.real, z.imag))


class PairChoice(Enum):
    EVEN_LOW = "even_low"
    EVEN_HIGH = "even_high"
    ODD_A = "odd_a"
    ODD_B = "odd_b"

    @property
    def occupancy(self) -> int:
        return _OCCUPANCY[self]


_OCCUPANCY = {
    PairChoice.EVEN_LOW: 0,
    PairChoice.EVEN_HIGH: 2,
    PairChoice.ODD_A: 1,
    PairChoice.ODD_B: 1,
}


class SpecialMode(Enum):
    ZERO = "zero"
    PI = "pi"


@dataclass(frozen=True)
class PairBlock:
    """Level content of one +-q pair."""

    q: float
    even_low: complex
    even_high: complex
    odd_level: float


@dataclass(frozen=True)
class BogoliubovCoeffs:
    """Rotation coefficients of one momentum mode; v carries sgn(sin q)."""

    q: float
    u: float
    v: float
    prefactor_ratio: complex


@dataclass(frozen=True)
class ChannelConstants:
    """Additive constants of the diagonalized channel Hamiltonians.

    lam is the negated dispersion sum over the channel's full grid.  offsets
    records the printed closed-form constants for all four channels; only the
    odd-L ones enter channel_form_energy (the even-L closed form does not
    reproduce the spectrum and the pair construction is used instead).
    """

    channel: Channel
    lam: complex
    offsets: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class LevelDescriptor:
    """One many-body level: energy plus the choices that produce it."""

    energy: complex
    channel: Channel
    pair_choices: dict[float, PairChoice]
    n_zero: int | None
    n_pi: int | None

    @property
    def occupation_parity(self) -> int:
        total = sum(c.occupancy for c in self.pair_choices.values())
        total += (self.n_zero or 0) + (self.n_pi or 0)
        return total % 2


@dataclass(frozen=True)
class SpectrumSet:
    """All 2^L levels of the spin ring, both channels merged."""

    params: ModelParams
    levels: tuple[LevelDescriptor, ...]

    @property
    def count(self) -> int:
        return len(self.levels)

    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels], dtype=complex)


def pair_block(params: ModelParams, q: float) -> PairBlock:
    """Even-sector eigenvalues 2cos q +- 2omega(q) and the odd-sector level
    2cos q of a single +-q pair.  q must be strictly inside (0, pi)."""
    if not 0.0 < q < math.pi:
        raise ParameterError(
            f"q={q} is not a paired momentum; use special_mode_energy for q in {{0, pi}}"
        )
    c2 = 2.0 * math.cos(q)
    om2 = 2.0 * dispersion(params, q)
    return PairBlock(
        q=q,
        even_low=complex(c2, 0.0) - om2,
        even_high=complex(c2, 0.0) + om2,
        odd_level=c2,
    )


def special_mode_energy(params: ModelParams, mode: SpecialMode, n: int) -> float:
    """Energy carried by the unpaired q = 0 or q = pi mode at occupation n,
    including the per-mode field constant +h."""
    if n not in (0, 1):
        raise ParameterError(f"special-mode occupation must be 0 or 1, got {n}")
    sign = 1.0 if mode is SpecialMode.ZERO else -1.0
    return 2.0 * (sign - params.h) * n + params.h


def channel_constants(params: ModelParams, channel: Channel) -> ChannelConstants:
    """Dispersion-sum constant and printed closed-form offsets of a channel."""
    grid = momentum_grid(params.L, channel)
    lam = -sum((dispersion(params, q) for q in grid.values), start=complex(0.0))
    h = params.h
    offsets: dict[str, float]
    if channel.site_parity.value == "O":
        if channel.fermion_parity is FermionParity.ODD:
            offsets = {"constant": abs(h - 1.0) + (h - 1.0), "zero_mode_coeff": -2.0 * (h - 1.0)}
        else:
            offsets = {"constant": 2.0 * (h + 1.0), "pi_mode_coeff": -2.0 * (h + 1.0)}
    else:
        if channel.fermion_parity is FermionParity.ODD:
            offsets = {
                "constant": abs(h - 1.0) + 3.0 + h,
                "zero_mode_coeff": 2.0 * (h - 1.0),
                "pi_mode_coeff": -2.0 * (h + 1.0),
            }
        else:
            offsets = {"constant": 0.0}
    return ChannelConstants(channel=channel, lam=lam, offsets=offsets)


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class _Element:
    """One independent degree of freedom: a +-q pair or a special mode.

    choices are (tag, energy, occupancy) sorted lexicographically by energy,
    so choices[0] is the per-element ground pick.
    """

    kind: str  # "pair" | "zero" | "pi"
    q: float | None
    choices: tuple[tuple[object, complex, int], ...]


def _build_elements(params: ModelParams, grid: MomentumGrid) -> list[_Element]:
    elements: list[_Element] = []
    for q in grid.paired:
        blk = pair_block(params, q)
        choices = [
            (PairChoice.EVEN_LOW, blk.even_low, 0),
            (PairChoice.EVEN_HIGH, blk.even_high, 2),
            (PairChoice.ODD_A, complex(blk.odd_level, 0.0), 1),
            (PairChoice.ODD_B, complex(blk.odd_level, 0.0), 1),
        ]
        choices.sort(key=lambda t: _LEX(t[1]))
        elements.append(_Element("pair", q, tuple(choices)))
    if grid.has_zero:
        choices = [
            (n, complex(special_mode_energy(params, SpecialMode.ZERO, n), 0.0), n)
            for n in (0, 1)
        ]
        choices.sort(key=lambda t: _LEX(t[1]))
        elements.append(_Element("zero", None, tuple(choices)))
    if grid.has_pi:
        choices = [
            (n, complex(special_mode_energy(params, SpecialMode.PI, n), 0.0), n)
            for n in (0, 1)
        ]
        choices.sort(key=lambda t: _LEX(t[1]))
        elements.append(_Element("pi", None, tuple(choices)))
    return elements


def _descriptor(channel: Channel, elements: list[_Element], picks) -> LevelDescriptor:
    energy = complex(0.0)
    pair_choices: dict[float, PairChoice] = {}
    n_zero = n_pi = None
    for element, (tag, value, _occ) in zip(elements, picks):
        energy += value
        if element.kind == "pair":
            pair_choices[element.q] = tag
        elif element.kind == "zero":
            n_zero = tag
        else:
            n_pi = tag
    return LevelDescriptor(
        energy=energy, channel=channel, pair_choices=pair_choices, n_zero=n_zero, n_pi=n_pi
    )


def channel_levels(params: ModelParams, channel: Channel) -> list[LevelDescriptor]:
    """All 2^(L-1) levels of one channel by direct enumeration."""
    want = 0 if channel.fermion_parity is FermionParity.EVEN else 1
    grid = momentum_grid(params.L, channel)
    elements = _build_elements(params, grid)
    out: list[LevelDescriptor] = []
    for picks in itertools.product(*(e.choices for e in elements)):
        parity = sum(p[2] for p in picks) % 2
        if parity == want:
            out.append(_descriptor(channel, elements, picks))
    return out


def enumerate_spectrum(params: ModelParams, cap: int = ENUMERATION_CAP) -> SpectrumSet:
    """The full 2^L level multiset, both channels merged.

    Refuses L above the cap; use ground_state/spectral_gap/low_levels for
    large rings, which construct only the low-lying candidates.
    """
    if params.L > cap:
        raise CapacityError(
            f"full enumeration of 2^{params.L} levels exceeds the cap L<={cap}; "
            "use ground_state/spectral_gap instead"
        )
    odd_ch, even_ch = channels_for_length(params.L)
    levels = channel_levels(params, odd_ch) + channel_levels(params, even_ch)
    return SpectrumSet(params=params, levels=tuple(levels))


def channel_energies(params: ModelParams, channel: Channel) -> np.ndarray:
    """Channel level energies sorted lexicographically by (Re, Im)."""
    w = np.array([lv.energy for lv in channel_levels(params, channel)], dtype=complex)
    return w[np.lexsort((w.imag, w.real))]


# ---------------------------------------------------------------------------
# low-lying levels without full enumeration

# Candidate configurations touch at most three elements away from the
# per-element minimum; three changes dominate every competitor for the two
# lowest distinct levels (each non-minimal choice costs a lexicographically
# non-negative increment).
_MOVE_POOL = 32


def _channel_candidates(
    params: ModelParams, channel: Channel, limit: int
) -> list[LevelDescriptor]:
    want = 0 if channel.fermion_parity is FermionParity.EVEN else 1
    grid = momentum_grid(params.L, channel)
    elements = _build_elements(params, grid)
    base = [e.choices[0] for e in elements]
    base_parity = sum(p[2] for p in base) % 2

    moves: list[tuple[complex, int, int, tuple[object, complex, int]]] = []
    for i, element in enumerate(elements):
        ref = element.choices[0]
        for alt in element.choices[1:]:
            delta = alt[1] - ref[1]
            dparity = (alt[2] - ref[2]) % 2
            moves.append((delta, i, dparity, alt))
    moves.sort(key=lambda m: _LEX(m[0]))
    moves = moves[:_MOVE_POOL]

    candidates: list[LevelDescriptor] = []

    def emit(applied: dict[int, tuple[object, complex, int]], parity: int) -> None:
        if parity != want:
            return
        picks = [applied.get(i, base[i]) for i in range(len(elements))]
        candidates.append(_descriptor(channel, elements, picks))

    emit({}, base_parity)
    n = len(moves)
    for a in range(n):
        _, ia, pa, ca = moves[a]
        emit({ia: ca}, (base_parity + pa) % 2)
        for b in range(a + 1, n):
            _, ib, pb, cb = moves[b]
            if ib == ia:
                continue
            emit({ia: ca, ib: cb}, (base_parity + pa + pb) % 2)
            for c in range(b + 1, n):
                _, ic, pc, cc = moves[c]
                if ic == ia or ic == ib:
                    continue
                emit(
                    {ia: ca, ib: cb, ic: cc},
                    (base_parity + pa + pb + pc) % 2,
                )

    candidates.sort(key=lambda lv: _LEX(lv.energy))
    return candidates[:limit]


def low_levels(params: ModelParams, k: int = 8) -> list[LevelDescriptor]:
    """The k lexicographically lowest levels of the merged spectrum.

    Built from parity-valid modifications of the per-element minimum in each
    channel, so it works at any L; intended for small k (ground manifold and
    first excitations).
    """
    odd_ch, even_ch = channels_for_length(params.L)
    merged = list(
        heapq.merge(
            _channel_candidates(params, odd_ch, k),
            _channel_candidates(params, even_ch, k),
            key=lambda lv: _LEX(lv.energy),
        )
    )
    return merged[:k]


def ground_state(params: ModelParams) -> LevelDescriptor:
    """The level with minimal (Re, Im) energy across both channels."""
    return low_levels(params, 1)[0]


def ground_energy(params: ModelParams) -> complex:
    """Ground level energy without descriptor bookkeeping (vectorized).

    In the symmetry-broken region the real-part-degenerate ground manifold is
    symmetric under conjugation; the returned value is the lexicographic
    minimum, whose |Im| is also the largest in the manifold.
    """
    best: complex | None = None
    h, p = params.h, params.gap_product
    for channel in channels_for_length(params.L):
        want = 0 if channel.fermion_parity is FermionParity.EVEN else 1
        grid = momentum_grid(params.L, channel)
        qs = np.asarray(grid.paired)
        cos_q = np.cos(qs)
        sin_q = np.sin(qs)
        f = (cos_q - h) ** 2 + p * sin_q * sin_q
        real_mask = f >= 0.0
        sq = np.sqrt(np.abs(f))

        # all pairs at their even-sector minimum 2cos q - 2*omega
        re = 2.0 * float(cos_q.sum()) - 2.0 * float(sq[real_mask].sum())
        im = -2.0 * float(sq[~real_mask].sum())
        parity = 0
        # parity repairs: pair -> odd sector costs 2*omega, which is free in
        # the real part when omega is imaginary
        flips_re: list[float] = []
        if real_mask.any():
            flips_re.append(2.0 * float(sq[real_mask].min()))
        imag_flip = 2.0 * float(sq[~real_mask].min()) if (~real_mask).any() else None

        for mode, present in ((SpecialMode.ZERO, grid.has_zero), (SpecialMode.PI, grid.has_pi)):
            if not present:
                continue
            e0 = special_mode_energy(params, mode, 0)
            e1 = special_mode_energy(params, mode, 1)
            if e1 < e0:
                re += e1
                parity += 1
                flips_re.append(e0 - e1)
            else:
                re += e0
                flips_re.append(e1 - e0)

        if parity % 2 != want:
            repaired = []
            if flips_re:
                repaired.append(complex(re + min(flips_re), im))
            if imag_flip is not None:
                repaired.append(complex(re, im + imag_flip))
            energy = min(repaired, key=_LEX)
        else:
            energy = complex(re, im)
        energy = complex(energy.real + 0.0, energy.imag + 0.0)  # drop negative zeros
        if best is None or _LEX(energy) < _LEX(best):
            best = energy
    assert best is not None
    return best


def spectral_gap(params: ModelParams, degeneracy_tol: float = DEGENERACY_TOL) -> float:
    """Re(E1) - Re(E0) with E1 the lowest level strictly above the ground
    manifold (real parts within degeneracy_tol of E0)."""
    levels = low_levels(params, 64)
    e0 = levels[0].energy.real
    for lv in levels[1:]:
        if lv.energy.real - e0 > degeneracy_tol:
            return lv.energy.real - e0
    raise ConsistencyError(
        f"all low-level candidates at L={params.L} fall inside one manifold; "
        "no gap is resolvable at this tolerance"
    )


# ---------------------------------------------------------------------------
# closed-form (channel-constant) energies, odd L


def channel_form_energy(params: ModelParams, level: LevelDescriptor) -> complex:
    """Level energy via the diagonalized channel form: constant lam plus the
    printed offsets plus 2*omega(q) per occupied paired quasiparticle.

    Defined for odd L only; the printed even-L constants do not reproduce the
    spectrum (see ChannelConstants.offsets) and the pair construction is
    normative there.
    """
    if params.L % 2 == 0:
        raise ParameterError("closed channel form is only supported for odd L")
    consts = channel_constants(params, level.channel)
    h = params.h
    if level.channel.fermion_parity is FermionParity.ODD:
        energy = consts.lam + abs(h - 1.0) + (h - 1.0)
        energy += -2.0 * (h - 1.0) * (level.n_zero or 0)
    else:
        energy = consts.lam + 2.0 * (h + 1.0)
        energy += -2.0 * (h + 1.0) * (level.n_pi or 0)
    for q, choice in level.pair_choices.items():
        energy += 2.0 * dispersion(params, q) * choice.occupancy
    return energy


# ---------------------------------------------------------------------------
# Bogoliubov rotation


def bogoliubov_coeffs(params: ModelParams, q: float) -> BogoliubovCoeffs:
    """u_q, v_q of the (non-unitary) Bogoliubov rotation, Eq.-(9)-style
    half-sum form; real-normalizable only where omega(q) is real positive and
    the gap product is non-negative."""
    s = math.sin(q)
    if s == 0.0:
        raise ParameterError(f"q={q} is a special mode; the rotation acts on pairs only")
    f = reality_function(params, q)
    if f <= 0.0:
        raise DomainError(
            f"omega(q)^2 = {f} <= 0 at q={q}; coefficients are not real-normalizable"
        )
    om = math.sqrt(f)
    x = (math.cos(q) - params.h) / om
    v_sq = 0.5 * (1.0 - x)
    u_sq = 0.5 * (1.0 + x)
    if v_sq < 0.0 or u_sq < 0.0:
        raise DomainError(
            "negative gap product pushes |cos q - h| above omega; "
            "coefficients are not real-normalizable"
        )
    u = math.sqrt(u_sq)
    v = math.copysign(math.sqrt(v_sq), s)
    p = params.gap_product
    if p > 0.0:
        ratio = complex(math.sqrt(params.delta_alpha / params.delta_beta), 0.0)
    else:
        ratio = complex(float("nan"), 0.0)  # meaningful only for a positive gap product
    return BogoliubovCoeffs(q=q, u=u, v=v, prefactor_ratio=ratio)


def verify_bdg_block(params: ModelParams, q: float) -> bool:
    """Diagonalize the 2x2 single-pair matrix in the (c_q, c^dag_-q) basis and
    check that its eigenvalues, shifted by 2cos q, reproduce pair_block."""
    if not 0.0 < q < math.pi:
        raise ParameterError(f"q={q} is outside the paired range (0, pi)")
    c = math.cos(q)
    s = math.sin(q)
    a = 2.0 * (c - params.h)
    m = np.array(
        [
            [a, -2.0j * params.delta_alpha * s],
            [2.0j * params.delta_beta * s, -a],
        ],
        dtype=complex,
    )
    eigs = np.linalg.eigvals(m)
    got = sorted((2.0 * c + lam for lam in eigs), key=_LEX)
    blk = pair_block(params, q)
    expect = sorted((blk.even_low, blk.even_high), key=_LEX)
    return all(abs(g - e) <= 1e-10 for g, e in zip(got, expect))
