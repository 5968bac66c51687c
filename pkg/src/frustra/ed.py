"""Brute-force exact diagonalization of the spin ring on the full 2^L basis.

Basis convention: basis state index s has bit j = 1 when spin j points down,
so sigma^z_j = +1 on bit 0 and the fermion number M equals the number of up
spins.  With this convention the Hamiltonian matrix is real (the imaginary
non-collinear coupling times the imaginary sigma^y entries), and generally
non-symmetric when delta != 0.  Each bond flips zero or two spins, so the
matrix is block diagonal in the parity of M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .errors import CapacityError, ConsistencyError
from .model import FermionParity, ModelParams

DENSE_BUILD_CAP = 14  # sites; 2^14 x 2^14 doubles
DENSE_EIG_CAP = 4096  # matrix dimension handed to the dense eigensolver
SECTOR_LEAK_TOL = 1e-14


@dataclass(frozen=True)
class SpinBasisIndex:
    """One spin configuration: bit j = 1 means spin j down."""

    bits: int
    up_count: int

    @classmethod
    def from_bits(cls, bits: int, L: int) -> "SpinBasisIndex":
        return cls(bits=bits, up_count=L - int(bin(bits).count("1")))

    @property
    def fermion_number(self) -> int:
        return self.up_count


@dataclass(frozen=True)
class DenseOperator:
    """Dense real matrix of the spin Hamiltonian on the full basis."""

    dim: int
    sites: int
    entries: np.ndarray


@dataclass(frozen=True)
class ParitySector:
    """Restriction of the Hamiltonian to one fermion-number parity."""

    parity: FermionParity
    states: np.ndarray  # basis codes, ascending
    block: np.ndarray


def _popcounts(states: np.ndarray, L: int) -> np.ndarray:
    counts = np.zeros_like(states)
    s = states.copy()
    for _ in range(L):
        counts += s & 1
        s >>= 1
    return counts


def build_hamiltonian(params: ModelParams, cap: int = DENSE_BUILD_CAP) -> DenseOperator:
    """Assemble the 2^L x 2^L matrix bond by bond.

    Per bond, in the two-site basis: the antiparallel states exchange with
    amplitude 1, up-up maps to down-down with amplitude delta_beta, down-down
    maps to up-up with amplitude delta_alpha; the field term is diagonal.
    """
    L = params.L
    if L > cap:
        raise CapacityError(f"dense build requires L <= {cap}, got L={L}")
    dim = 1 << L
    da, db = params.delta_alpha, params.delta_beta
    states = np.arange(dim, dtype=np.int64)
    pops = _popcounts(states, L)

    H = np.zeros((dim, dim))
    H[states, states] = -params.h * (L - 2 * pops)
    for j in range(L):
        a, b = j, (j + 1) % L
        mask = np.int64((1 << a) | (1 << b))
        bit_a = (states >> a) & 1
        bit_b = (states >> b) & 1
        flipped = states ^ mask
        both_up = (bit_a == 0) & (bit_b == 0)
        both_down = (bit_a == 1) & (bit_b == 1)
        anti = bit_a != bit_b
        H[flipped[both_up], states[both_up]] += db
        H[flipped[both_down], states[both_down]] += da
        H[flipped[anti], states[anti]] += 1.0
    return DenseOperator(dim=dim, sites=L, entries=H)


def parity_sectors(op: DenseOperator) -> tuple[ParitySector, ParitySector]:
    """Split the basis by the parity of the fermion number M = #up spins.

    Returns (odd, even).  The off-parity blocks must vanish identically;
    anything above SECTOR_LEAK_TOL aborts.
    """
    states = np.arange(op.dim, dtype=np.int64)
    ups = op.sites - _popcounts(states, op.sites)
    odd_states = states[ups % 2 == 1]
    even_states = states[ups % 2 == 0]
    leak = max(
        np.abs(op.entries[np.ix_(odd_states, even_states)]).max(initial=0.0),
        np.abs(op.entries[np.ix_(even_states, odd_states)]).max(initial=0.0),
    )
    if leak > SECTOR_LEAK_TOL:
        raise ConsistencyError(f"parity sectors leak: off-block max {leak:.3e}")
    return (
        ParitySector(FermionParity.ODD, odd_states, op.entries[np.ix_(odd_states, odd_states)]),
        ParitySector(FermionParity.EVEN, even_states, op.entries[np.ix_(even_states, even_states)]),
    )


def eigenvalues(
    op: DenseOperator | ParitySector | np.ndarray, cap: int = DENSE_EIG_CAP
) -> np.ndarray:
    """All eigenvalues of a dense matrix, sorted lexicographically by (Re, Im)."""
    if isinstance(op, DenseOperator):
        matrix = op.entries
    elif isinstance(op, ParitySector):
        matrix = op.block
    else:
        matrix = np.asarray(op)
    n = matrix.shape[0]
    if n > cap:
        raise CapacityError(f"dense eigensolve capped at dimension {cap}, got {n}")
    try:
        w = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        norm = float(np.abs(matrix).max())
        raise ConsistencyError(
            f"eigensolver failed on a {n}x{n} block (max |entry| {norm:.3e}): {exc}"
        ) from exc
    return w[np.lexsort((w.imag, w.real))]


def sector_eigenvalues(params: ModelParams) -> dict[FermionParity, np.ndarray]:
    """Eigenvalues of both parity blocks, keyed by fermion parity."""
    odd, even = parity_sectors(build_hamiltonian(params))
    return {FermionParity.ODD: eigenvalues(odd), FermionParity.EVEN: eigenvalues(even)}


def _sparse_sector_blocks(params: ModelParams) -> dict[FermionParity, scipy.sparse.csr_matrix]:
    L = params.L
    dim = 1 << L
    da, db = params.delta_alpha, params.delta_beta
    states = np.arange(dim, dtype=np.int64)
    pops = _popcounts(states, L)
    rows = [states]
    cols = [states]
    vals = [-params.h * (L - 2 * pops).astype(float)]
    for j in range(L):
        a, b = j, (j + 1) % L
        mask = np.int64((1 << a) | (1 << b))
        bit_a = (states >> a) & 1
        bit_b = (states >> b) & 1
        flipped = states ^ mask
        for sel, amp in (
            ((bit_a == 0) & (bit_b == 0), db),
            ((bit_a == 1) & (bit_b == 1), da),
            (bit_a != bit_b, 1.0),
        ):
            rows.append(flipped[sel])
            cols.append(states[sel])
            vals.append(np.full(int(sel.sum()), amp))
    H = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    ups = L - pops
    out = {}
    for parity, sel in (
        (FermionParity.ODD, ups % 2 == 1),
        (FermionParity.EVEN, ups % 2 == 0),
    ):
        idx = states[sel]
        out[parity] = H[idx][:, idx]
    return out


def ground_energy(params: ModelParams, degeneracy_tol: float = 1e-8) -> tuple[complex, float]:
    """(lexicographic-minimum eigenvalue, max |Im| over the ground manifold).

    The manifold collects eigenvalues whose real parts sit within
    degeneracy_tol of the minimum.  Dense parity-sector solves cover
    L <= 13; beyond that, ARPACK smallest-real-part Ritz values are used with
    a fixed start vector, and the manifold is truncated to those values.
    """
    L = params.L
    if L > DENSE_BUILD_CAP:
        raise CapacityError(f"ED ground state requires L <= {DENSE_BUILD_CAP}, got L={L}")
    if 1 << (L - 1) <= DENSE_EIG_CAP:
        spectra = sector_eigenvalues(params)
        w = np.concatenate([spectra[FermionParity.ODD], spectra[FermionParity.EVEN]])
    else:
        blocks = _sparse_sector_blocks(params)
        ritz = []
        for block in blocks.values():
            n = block.shape[0]
            v0 = np.full(n, 1.0 / np.sqrt(n))
            ritz.append(
                scipy.sparse.linalg.eigs(
                    block, k=8, which="SR", v0=v0, return_eigenvectors=False
                )
            )
        w = np.concatenate(ritz)
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    manifold = w[w.real - w[0].real <= degeneracy_tol]
    return complex(w[0]), float(np.abs(manifold.imag).max())
