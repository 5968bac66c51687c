"""Multiset matching between analytic levels and the ED oracle.

Plain index pairing after a lexicographic sort misorders conjugate quartets
{x - i s, x + i s, x - i s', x + i s'} whose exactly-tied real parts pick up
independent eigensolver noise.  Matching therefore first sorts by (Re, Im),
then clusters the union along the real axis (gaps larger than
max(100*tol, 1e-6) split clusters), and pairs inside each cluster in
(Im, Re) order.  Pairing choices never hide errors: the report carries the
largest paired distance and the count of values left over by per-cluster
size mismatches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import ed, spectrum
from .errors import CapacityError
from .model import FermionParity, ModelParams, channels_for_length

CHANNEL_MATCH_CAP = 12


def default_tolerance(params: ModelParams) -> float:
    """Matching tolerance scaled by coupling magnitudes and system size."""
    return 1e-8 * (1.0 + abs(params.gamma) + abs(params.delta) + abs(params.h)) * params.L


@dataclass(frozen=True)
class MatchReport:
    n_levels: int
    max_residual: float
    unmatched: int
    tolerance: float
    channel_breakdown: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.unmatched == 0 and self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "n_levels": self.n_levels,
            "max_residual": self.max_residual,
            "unmatched": self.unmatched,
            "tolerance": self.tolerance,
            "channel_breakdown": dict(self.channel_breakdown),
            "pass": self.passed,
        }


def _lex_sorted(values: np.ndarray) -> np.ndarray:
    return values[np.lexsort((values.imag, values.real))]


def match_multisets(a: Iterable[complex], b: Iterable[complex], tol: float) -> MatchReport:
    """Pair two complex multisets and report the largest pairwise distance.

    A size mismatch is a structural failure: the report carries the count
    difference as unmatched values instead of raising, so callers can surface
    it in verification output.
    """
    av = np.asarray(list(a), dtype=complex)
    bv = np.asarray(list(b), dtype=complex)
    if av.size != bv.size:
        return MatchReport(
            n_levels=max(av.size, bv.size),
            max_residual=float("nan"),
            unmatched=abs(av.size - bv.size),
            tolerance=tol,
        )
    if av.size == 0:
        return MatchReport(n_levels=0, max_residual=0.0, unmatched=0, tolerance=tol)

    a_sorted = _lex_sorted(av)
    b_sorted = _lex_sorted(bv)
    quick = float(np.abs(a_sorted - b_sorted).max())
    if quick <= tol:
        return MatchReport(av.size, quick, 0, tol)

    # cluster the union along Re, then pair in (Im, Re) order inside clusters
    gap = max(100.0 * tol, 1e-6)
    union = np.sort(np.concatenate([a_sorted.real, b_sorted.real]))
    starts = union[np.concatenate([[True], np.diff(union) > gap])]

    def cluster_ids(values: np.ndarray) -> np.ndarray:
        return np.searchsorted(starts, values.real, side="right") - 1

    ca = cluster_ids(a_sorted)
    cb = cluster_ids(b_sorted)
    a_ord = a_sorted[np.lexsort((a_sorted.real, a_sorted.imag, ca))]
    b_ord = b_sorted[np.lexsort((b_sorted.real, b_sorted.imag, cb))]
    counts_a = np.bincount(ca, minlength=len(starts))
    counts_b = np.bincount(cb, minlength=len(starts))
    if np.array_equal(counts_a, counts_b):
        residual = float(np.abs(a_ord - b_ord).max())
        return MatchReport(av.size, residual, 0, tol)

    # per-cluster sizes differ: pair what aligns, count the rest unmatched
    unmatched = int(np.abs(counts_a - counts_b).sum())
    residual = 0.0
    ia = ib = 0
    for na, nb in zip(counts_a, counts_b):
        n = min(na, nb)
        if n:
            residual = max(residual, float(np.abs(a_ord[ia : ia + n] - b_ord[ib : ib + n]).max()))
        ia += na
        ib += nb
    return MatchReport(av.size, residual, unmatched, tol)


def channel_match(params: ModelParams, tol: float | None = None) -> MatchReport:
    """Match each analytic channel against the ED parity sector of the same
    fermion parity and aggregate the outcome."""
    if params.L > CHANNEL_MATCH_CAP:
        raise CapacityError(
            f"channel match diagonalizes 2^{params.L} states; capped at L={CHANNEL_MATCH_CAP}"
        )
    if tol is None:
        tol = default_tolerance(params)
    ed_spectra = ed.sector_eigenvalues(params)
    odd_ch, even_ch = channels_for_length(params.L)

    breakdown: dict[str, float] = {}
    unmatched = 0
    max_residual = 0.0
    for channel, parity in ((odd_ch, FermionParity.ODD), (even_ch, FermionParity.EVEN)):
        analytic = spectrum.channel_energies(params, channel)
        report = match_multisets(analytic, ed_spectra[parity], tol)
        breakdown[parity.name.lower()] = report.max_residual
        unmatched += report.unmatched
        if not np.isnan(report.max_residual):
            max_residual = max(max_residual, report.max_residual)
        else:
            max_residual = float("nan")
    return MatchReport(
        n_levels=1 << params.L,
        max_residual=max_residual,
        unmatched=unmatched,
        tolerance=tol,
        channel_breakdown=breakdown,
    )
