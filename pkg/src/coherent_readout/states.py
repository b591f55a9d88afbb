"""Density matrices and their real coordinate decomposition.

A valid N x N density matrix splits into N real populations
x_l = <l|rho|l> and N(N-1) real coherence coordinates packing the upper
triangle: for each pair l < r in lexicographic order, the entry
c_lr = <l|rho|r> contributes (Re c_lr, Im c_lr) consecutively. That layout
is shared by the readout model's coherence-response matrix and the
mitigation solver, so it is defined once here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ATOL_PHYSICAL, as_square_array, is_hermitian, min_eigenvalue_hermitian


def coherence_pairs(dim: int) -> list[tuple[int, int]]:
    """Index pairs (l, r) with l < r, lexicographic; the coherence vector order."""
    return [(l, r) for l in range(dim) for r in range(l + 1, dim)]


@dataclass(frozen=True)
class DensityMatrix:
    """Validated quantum state: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        a = as_square_array(self.matrix, name="density matrix")
        object.__setattr__(self, "matrix", a)
        if not is_hermitian(a, ATOL_PHYSICAL):
            raise ValueError("density matrix is not Hermitian within 1e-10")
        trace = complex(np.trace(a))
        if abs(trace - 1.0) > ATOL_PHYSICAL:
            raise ValueError(f"density matrix trace {trace!r} is not 1 within 1e-10")
        w_min = min_eigenvalue_hermitian(a)
        if w_min < -ATOL_PHYSICAL:
            raise ValueError(f"density matrix has negative eigenvalue {w_min:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class StateDecomposition:
    """Real coordinates of a state: populations x and packed coherences y."""

    populations: np.ndarray
    coherences: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.populations, dtype=float)
        y = np.asarray(self.coherences, dtype=float)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("populations must be a non-empty 1-d real vector")
        n = x.size
        if y.ndim != 1 or y.size != n * (n - 1):
            raise ValueError(
                f"coherence vector must have length N(N-1) = {n * (n - 1)}, got {y.size}"
            )
        if abs(x.sum() - 1.0) > ATOL_PHYSICAL:
            raise ValueError(f"populations must sum to 1, got {x.sum()!r}")
        if x.min() < -ATOL_PHYSICAL:
            raise ValueError(f"negative population {x.min():.3e}")
        object.__setattr__(self, "populations", x)
        object.__setattr__(self, "coherences", y)

    @property
    def dim(self) -> int:
        return self.populations.size


def split_matrix(m) -> tuple[np.ndarray, np.ndarray]:
    """Raw coordinate extraction from a Hermitian matrix; no physicality checks."""
    a = as_square_array(m)
    n = a.shape[0]
    x = a.diagonal().real.copy()
    y = np.empty(n * (n - 1), dtype=float)
    for i, (l, r) in enumerate(coherence_pairs(n)):
        y[2 * i] = a[l, r].real
        y[2 * i + 1] = a[l, r].imag
    return x, y


def assemble_matrix(x, y) -> np.ndarray:
    """Inverse of split_matrix; the output is Hermitian by construction."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    if y.size != n * (n - 1):
        raise ValueError(
            f"coherence vector must have length N(N-1) = {n * (n - 1)}, got {y.size}"
        )
    m = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(m, x)
    for i, (l, r) in enumerate(coherence_pairs(n)):
        c = complex(y[2 * i], y[2 * i + 1])
        m[l, r] = c
        m[r, l] = c.conjugate()
    return m


def decompose(rho) -> StateDecomposition:
    """Coordinates of a valid density matrix; rejects unphysical input."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    x, y = split_matrix(rho.matrix)
    return StateDecomposition(populations=x, coherences=y)


def reconstruct(decomp: StateDecomposition, dim: int | None = None) -> np.ndarray:
    """Matrix form of a decomposition. Exact inverse of decompose.

    Hermitian by construction; positivity is not implied for arbitrary
    coordinates, so the return value is a plain array.
    """
    if dim is not None and dim != decomp.dim:
        raise ValueError(f"dimension mismatch: decomposition has {decomp.dim}, got {dim}")
    return assemble_matrix(decomp.populations, decomp.coherences)


def random_density(n_qubits: int, seed) -> DensityMatrix:
    """Full-rank random state on n qubits: G G^dag / Tr(G G^dag), Gaussian G."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    dim = 2**n_qubits
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)
