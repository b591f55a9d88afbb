"""Coherence-sensitive linear readout model z = A x + C y.

A is the classical assignment matrix, A[k, l] = <l|F_k|l>: the probability
of reporting outcome k when the device holds basis state l. C extends the
model to coherent input: column pair p of C holds, for the state-coordinate
pair (Re c_lr, Im c_lr), the responses 2*Re<l|F_k|r> and 2*Im<l|F_k|r>.
The factor 2 absorbs the two conjugate off-diagonal terms of Tr(F_k rho),
so the identity z_k = Tr(F_k rho) = (A x + C y)_k holds literally in the
coordinates of states.StateDecomposition.

oracle_probabilities reproduces z through the full superoperator without
touching the POVM coefficient path, which pins every sign and ordering
convention above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, superoperator
from .linalg import ATOL_PHYSICAL, ATOL_STRUCTURAL, unvec, vec
from .povm import Povm
from .states import DensityMatrix, StateDecomposition, coherence_pairs


@dataclass(frozen=True)
class ReadoutModel:
    """Assignment matrix (N x N) and coherence response (N x N(N-1)).

    Columns of the assignment matrix sum to 1 and its entries lie in [0, 1];
    columns of the coherence response sum to 0. Both follow from POVM
    completeness and are enforced here at the physicality tolerance.
    """

    assignment: np.ndarray
    coherence: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=float)
        c = np.asarray(self.coherence, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"assignment matrix must be square, got shape {a.shape}")
        n = a.shape[0]
        if c.shape != (n, n * (n - 1)):
            raise ValueError(
                f"coherence response must have shape ({n}, {n * (n - 1)}), got {c.shape}"
            )
        if np.max(np.abs(a.sum(axis=0) - 1.0)) > ATOL_PHYSICAL:
            raise ValueError("assignment matrix columns must sum to 1")
        if a.min() < -ATOL_PHYSICAL or a.max() > 1.0 + ATOL_PHYSICAL:
            raise ValueError("assignment matrix entries must lie in [0, 1]")
        if c.size and np.max(np.abs(c.sum(axis=0))) > ATOL_PHYSICAL:
            raise ValueError("coherence response columns must sum to 0")
        object.__setattr__(self, "assignment", a)
        object.__setattr__(self, "coherence", c)

    @property
    def dim(self) -> int:
        return self.assignment.shape[0]


def extract(p: Povm) -> ReadoutModel:
    """Read the model coefficients off the POVM elements."""
    n = p.dim
    a = np.empty((n, n), dtype=float)
    c = np.empty((n, n * (n - 1)), dtype=float)
    pairs = coherence_pairs(n)
    for k, f in enumerate(p.elements):
        diag = f.diagonal()
        if diag.size and np.max(np.abs(diag.imag)) > ATOL_STRUCTURAL:
            raise ValueError(f"POVM element {k} has non-real diagonal")
        a[k, :] = diag.real
        for i, (l, r) in enumerate(pairs):
            c[k, 2 * i] = 2.0 * f[l, r].real
            c[k, 2 * i + 1] = 2.0 * f[l, r].imag
    return ReadoutModel(assignment=a, coherence=c)


def forward(model: ReadoutModel, decomp: StateDecomposition) -> np.ndarray:
    """Predicted outcome distribution z = A x + C y."""
    if decomp.dim != model.dim:
        raise ValueError(f"dimension mismatch: model {model.dim}, state {decomp.dim}")
    return model.assignment @ decomp.populations + model.coherence @ decomp.coherences


def classical_forward(model: ReadoutModel, x) -> np.ndarray:
    """Assignment-only prediction z = A x, ignoring coherence entirely."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dim,):
        raise ValueError(f"population vector must have shape ({model.dim},)")
    if abs(x.sum() - 1.0) > ATOL_PHYSICAL:
        raise ValueError(f"populations must sum to 1, got {x.sum()!r}")
    return model.assignment @ x


def oracle_probabilities(ch: KrausChannel, rho) -> np.ndarray:
    """Outcome distribution via the superoperator: diag of unvec(H vec(rho)).

    Independent of the POVM/coefficient route; used to cross-check forward().
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if rho.dim != ch.dim:
        raise ValueError(f"dimension mismatch: channel {ch.dim}, state {rho.dim}")
    out = unvec(superoperator(ch) @ vec(rho.matrix), ch.dim)
    return out.diagonal().real.copy()


def nonclassicality(model: ReadoutModel, norm: str = "max") -> float:
    """Size of the coherence response; zero iff the readout is classical."""
    if norm == "max":
        return float(np.max(np.abs(model.coherence))) if model.coherence.size else 0.0
    if norm == "frobenius":
        return float(np.linalg.norm(model.coherence))
    raise ValueError(f"unknown norm {norm!r}, expected 'max' or 'frobenius'")
