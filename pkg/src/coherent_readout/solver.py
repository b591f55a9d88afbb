"""Physically constrained inversion of the readout model.

The mitigation problem is underdetermined: one observed distribution z
(N numbers) against N^2 state coordinates v = [x; y]. Rather than picking a
pseudoinverse solution, the solver runs projected gradient descent on
0.5 * ||z - B v||^2 with B = [A C], projecting every iterate back to the
set of coordinates whose reconstructed matrix is a valid density matrix.
The step size is 1/L with L the largest eigenvalue of B^T B, found by
power iteration. A classical assignment-only inverter is included for
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import eigh_jacobi
from .readout import ReadoutModel
from .states import assemble_matrix, split_matrix

_DISPLACEMENT_TOL = 1e-12


@dataclass(frozen=True)
class SolverOptions:
    max_iterations: int = 5000
    step_size: float | None = None  # None: use 1/L from power iteration
    residual_tol: float = 1e-9
    norm: str = "euclidean"
    seed: int = 0
    objective: str = "least-squares"  # placeholder for alternative objectives

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.step_size is not None and not self.step_size > 0.0:
            raise ValueError("step_size must be positive")
        if not self.residual_tol > 0.0:
            raise ValueError("residual_tol must be positive")
        if self.norm != "euclidean":
            raise ValueError(f"unsupported norm {self.norm!r}")
        if self.objective != "least-squares":
            raise ValueError(f"unsupported objective {self.objective!r}")


@dataclass(frozen=True)
class MitigationProblem:
    model: ReadoutModel
    z_observed: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z_observed, dtype=float)
        if z.shape != (self.model.dim,):
            raise ValueError(
                f"observed distribution must have shape ({self.model.dim},), got {z.shape}"
            )
        if not np.all(np.isfinite(z)):
            raise ValueError("observed distribution contains non-finite entries")
        object.__setattr__(self, "z_observed", z)


@dataclass(frozen=True)
class MitigationResult:
    x_hat: np.ndarray
    y_hat: np.ndarray
    residual: float
    iterations: int
    converged: bool
    residual_history: tuple = field(repr=False, default=())

    @property
    def v_hat(self) -> np.ndarray:
        """Stacked coordinates [x_hat; y_hat], the solver's working vector."""
        return np.concatenate([self.x_hat, self.y_hat])


def assemble_b(model: ReadoutModel) -> np.ndarray:
    """Stacked model matrix B = [A C], mapping [x; y] to z."""
    return np.hstack([model.assignment, model.coherence])


def project_to_simplex(u) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.asarray(u, dtype=float)
    srt = np.sort(u)[::-1]
    css = np.cumsum(srt)
    idx = np.arange(1, u.size + 1)
    feasible = srt + (1.0 - css) / idx > 0.0
    k = idx[feasible][-1]
    tau = (1.0 - css[feasible][-1]) / k
    return np.maximum(u + tau, 0.0)


def project_to_density_set(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Map raw coordinates to those of the nearest density matrix.

    Reconstructs the Hermitian matrix and projects its spectrum onto the
    probability simplex, which clips negative eigenvalues to zero and
    restores unit trace in one shifted-threshold step. That makes the map
    the metric projection onto the density set, which the gradient descent
    in mitigate() needs: a plain trace rescale after clipping can cancel a
    gradient step exactly (whenever the step is parallel to the iterate)
    and park the solver at a non-optimal point.
    """
    m = assemble_matrix(x, y)
    w, v = eigh_jacobi(m)
    if np.max(w) <= 0.0:
        raise ValueError("projection degenerate: no positive eigenvalue mass")
    w = project_to_simplex(w)
    return split_matrix(v @ np.diag(w) @ v.conj().T)


def _largest_eigenvalue(m: np.ndarray, rng, iterations: int = 200, tol: float = 1e-10) -> float:
    """Power iteration for the top eigenvalue of a symmetric PSD matrix."""
    u = rng.standard_normal(m.shape[0])
    u /= np.linalg.norm(u)
    lam = 0.0
    for _ in range(iterations):
        w = m @ u
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        u = w / norm
        lam_new = float(u @ (m @ u))
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            return lam_new
        lam = lam_new
    return lam


def mitigate(problem: MitigationProblem, options: SolverOptions | None = None) -> MitigationResult:
    """Projected gradient descent on 0.5 ||z - B v||^2 over valid states.

    Starts from the maximally mixed state (x = 1/N, y = 0) and returns the
    best iterate seen. converged means the Euclidean residual reached
    residual_tol or the iterate stopped moving (stationary point).
    """
    opts = options or SolverOptions()
    model = problem.model
    z = problem.z_observed
    n = model.dim
    b = assemble_b(model)

    if opts.step_size is not None:
        step = opts.step_size
    else:
        rng = np.random.default_rng(opts.seed)
        lam = _largest_eigenvalue(b.T @ b, rng)
        if lam <= 0.0:
            raise ValueError("model matrix has no positive curvature; cannot set a step size")
        step = 1.0 / lam

    v = np.concatenate([np.full(n, 1.0 / n), np.zeros(n * (n - 1))])
    residual = float(np.linalg.norm(z - b @ v))
    history = [residual]
    best_v, best_residual = v, residual
    converged = residual <= opts.residual_tol
    iterations = 0

    while not converged and iterations < opts.max_iterations:
        grad = b.T @ (b @ v - z)
        trial = v - step * grad
        x_new, y_new = project_to_density_set(trial[:n], trial[n:])
        v_new = np.concatenate([x_new, y_new])
        displacement = float(np.linalg.norm(v_new - v))
        v = v_new
        iterations += 1

        residual = float(np.linalg.norm(z - b @ v))
        if not np.isfinite(residual):
            raise ValueError("solver diverged to non-finite values")
        history.append(residual)
        if residual < best_residual:
            best_residual = residual
            best_v = v
        if residual <= opts.residual_tol or displacement < _DISPLACEMENT_TOL:
            converged = True

    return MitigationResult(
        x_hat=best_v[:n].copy(),
        y_hat=best_v[n:].copy(),
        residual=best_residual,
        iterations=iterations,
        converged=converged,
        residual_history=tuple(history),
    )


def classical_invert(model: ReadoutModel, z, singular_tol: float = 1e-12) -> np.ndarray:
    """Assignment-only mitigation: least-squares solve of A x = z, then simplex projection."""
    z = np.asarray(z, dtype=float)
    if z.shape != (model.dim,):
        raise ValueError(f"distribution must have shape ({model.dim},), got {z.shape}")
    a = model.assignment
    svals = np.linalg.svd(a, compute_uv=False)
    if svals[-1] <= singular_tol * max(1.0, svals[0]):
        raise ValueError(
            f"assignment matrix is singular at tolerance {singular_tol:.1e} "
            f"(smallest singular value {svals[-1]:.3e})"
        )
    x_ls, *_ = np.linalg.lstsq(a, z, rcond=None)
    return project_to_simplex(x_ls)
