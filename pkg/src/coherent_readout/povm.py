"""Effective measurement operators of a noisy computational-basis readout.

Measuring in the computational basis after a channel E is the same as
measuring the POVM F_k = E^dag(|k><k|) on the noiseless state. The
operator-valued kernel K(s, t) = E(|s><t|) tracks where each matrix unit
goes; its diagonal elements <k|K(l, r)|k| for l != r are exactly the terms a
purely classical assignment-matrix model cannot represent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, adjoint_apply, apply
from .linalg import ATOL_PHYSICAL, as_square_array, is_hermitian, min_eigenvalue_hermitian


@dataclass(frozen=True)
class Povm:
    """Validated POVM: Hermitian, positive semidefinite elements summing to I."""

    dim: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elems = tuple(
            as_square_array(e, name=f"POVM element {k}") for k, e in enumerate(self.elements)
        )
        object.__setattr__(self, "elements", elems)
        if len(elems) != self.dim:
            raise ValueError(
                f"expected {self.dim} POVM elements for a {self.dim}-outcome readout, "
                f"got {len(elems)}"
            )
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for k, e in enumerate(elems):
            if e.shape[0] != self.dim:
                raise ValueError(f"POVM element {k} has wrong dimension {e.shape[0]}")
            if not is_hermitian(e, ATOL_PHYSICAL):
                raise ValueError(f"POVM hermiticity violated by element {k}")
            w_min = min_eigenvalue_hermitian(e)
            if w_min < -ATOL_PHYSICAL:
                raise ValueError(
                    f"POVM positivity violated by element {k}: eigenvalue {w_min:.3e}"
                )
            total += e
        defect = float(np.max(np.abs(total - np.eye(self.dim))))
        if defect > ATOL_PHYSICAL:
            raise ValueError(f"POVM completeness violated: defect {defect:.3e}")


def effective_povm(ch: KrausChannel) -> Povm:
    """POVM equivalent to basis measurement after the channel: F_k = E^dag(|k><k|)."""
    elements = []
    for k in range(ch.dim):
        proj = np.zeros((ch.dim, ch.dim), dtype=complex)
        proj[k, k] = 1.0
        elements.append(adjoint_apply(ch, proj))
    return Povm(dim=ch.dim, elements=tuple(elements))


def kernel(ch: KrausChannel, s: int, t: int) -> np.ndarray:
    """Image of the matrix unit |s><t| under the channel. Computed on demand."""
    if not (0 <= s < ch.dim and 0 <= t < ch.dim):
        raise ValueError(f"kernel indices ({s}, {t}) out of range for dim {ch.dim}")
    unit = np.zeros((ch.dim, ch.dim), dtype=complex)
    unit[s, t] = 1.0
    return apply(ch, unit)


def kernel_diag_defect(ch: KrausChannel) -> float:
    """max over k and l != r of |<k| E(|l><r|) |k>|; zero iff the readout is classical."""
    worst = 0.0
    for l in range(ch.dim):
        for r in range(ch.dim):
            if l == r:
                continue
            worst = max(worst, float(np.max(np.abs(kernel(ch, l, r).diagonal()))))
    return worst


def offdiag_defect(p: Povm) -> float:
    """Largest off-diagonal magnitude across all POVM elements."""
    worst = 0.0
    mask = ~np.eye(p.dim, dtype=bool)
    for e in p.elements:
        if p.dim > 1:
            worst = max(worst, float(np.max(np.abs(e[mask]))))
    return worst
