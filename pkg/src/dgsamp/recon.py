"""Smoothness evaluation and signal reconstruction from node samples.

The smoothness of x is the squared norm of the one-hop shift residual,
||L x||^2 with L the random-walk Laplacian.  Reconstruction solves

    (A + mu L^T L) x = H^T y

by conjugate gradient, where A is the 0/1 diagonal sampling indicator.
The operator is applied matrix-free; L^T L is never formed, which keeps
every application at O(edges).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .digraph import RwLaplacian
from .errors import DimensionMismatchError
from .spectral import CgSolution, SymOperator, cg_solve


@dataclass(frozen=True)
class SampleSet:
    """Sorted, duplicate-free node indices; K is the cardinality."""

    indices: np.ndarray

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        if len(idx) and idx[0] < 0:
            raise ValueError(f"negative node index {idx[0]}")
        if len(idx) != len(self.indices):
            raise ValueError("sample indices must be unique")
        object.__setattr__(self, "indices", idx)
        idx.setflags(write=False)

    @property
    def k(self) -> int:
        return len(self.indices)

    def mask(self, n: int) -> np.ndarray:
        """0/1 indicator of length n (the diagonal of A = H^T H)."""
        if self.k and self.indices[-1] >= n:
            raise ValueError(f"sample index {self.indices[-1]} out of range for n={n}")
        a = np.zeros(n)
        a[self.indices] = 1.0
        return a


@dataclass(frozen=True)
class ReconResult:
    x: np.ndarray
    iterations: int
    residual: float


def gsv(x: np.ndarray, L: RwLaplacian) -> float:
    """Shift-variation smoothness ||L x||_2^2; zero iff x is constant."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (L.n,):
        raise DimensionMismatchError(f"signal has shape {x.shape}, graph has n={L.n}")
    r = L.matrix @ x
    return float(r @ r)


def sampling_operator(s: SampleSet, mu: float, L: RwLaplacian) -> SymOperator:
    """Symmetric positive definite map v -> A v + mu L^T (L v)."""
    a = s.mask(L.n)
    mat, mat_t = L.matrix, L.transpose_csr
    return SymOperator(n=L.n, apply=lambda v: a * v + mu * (mat_t @ (mat @ v)))


def reconstruct(y: np.ndarray, s: SampleSet, mu: float, L: RwLaplacian,
                tol: float = 1e-8, max_iter: int | None = None) -> ReconResult:
    """Recover the full signal from samples y taken at s.

    y follows the sorted order of s.indices.  mu > 0 trades off sample
    fidelity against smoothness.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (s.k,):
        raise DimensionMismatchError(
            f"got {y.shape[0] if y.ndim == 1 else y.shape} observations for {s.k} samples"
        )
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if s.k < 1:
        raise ValueError("reconstruction needs at least one sample")
    b = np.zeros(L.n)
    b[s.indices] = y
    sol: CgSolution = cg_solve(sampling_operator(s, mu, L), b, tol=tol, max_iter=max_iter)
    return ReconResult(x=sol.x, iterations=sol.iterations, residual=sol.residual)


def mse(x: np.ndarray, xhat: np.ndarray) -> float:
    """Squared Euclidean distance ||x - xhat||_2^2."""
    x = np.asarray(x, dtype=np.float64)
    xhat = np.asarray(xhat, dtype=np.float64)
    if x.shape != xhat.shape:
        raise DimensionMismatchError(f"shape mismatch {x.shape} vs {xhat.shape}")
    d = x - xhat
    return float(d @ d)
