"""Self-contained numerical kernels.

Conjugate gradient, dense symmetric eigensolver (test oracle and signal
generator territory), a deflated Lanczos for the second-smallest
eigenvalue, Cholesky, and Gershgorin disc evaluation under diagonal
similarity scaling.  The sampling path itself never calls the dense
eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.sparse as sparse

from .errors import (
    NoConvergenceError,
    NotPositiveDefiniteError,
    SizeLimitExceededError,
)

DENSE_LIMIT = 2000


@dataclass(frozen=True)
class SymOperator:
    """Symmetric linear map v -> M v of dimension n."""

    n: int
    apply: Callable[[np.ndarray], np.ndarray]

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.apply(v)

    @classmethod
    def from_matrix(cls, M) -> "SymOperator":
        n = M.shape[0]
        return cls(n=n, apply=lambda v: np.asarray(M @ v).ravel())


def gram_operator(A) -> SymOperator:
    """v -> A^T (A v) without forming A^T A; A sparse or dense."""
    if sparse.issparse(A):
        At = A.T.tocsr()
    else:
        At = np.ascontiguousarray(np.asarray(A).T)
    return SymOperator(n=A.shape[0], apply=lambda v: At @ (A @ v))


@dataclass(frozen=True)
class CgSolution:
    x: np.ndarray
    iterations: int
    residual: float  # ||Mx - b|| / ||b||


def cg_solve(M: SymOperator, b: np.ndarray, tol: float = 1e-8,
             max_iter: int | None = None) -> CgSolution:
    """Conjugate gradient for symmetric positive definite M.

    Stops when ||Mx - b|| <= tol * ||b||.  Raises NoConvergenceError
    carrying the best iterate if max_iter is hit first.
    """
    b = np.asarray(b, dtype=np.float64)
    n = b.shape[0]
    if max_iter is None:
        max_iter = 10 * n
    norm_b = np.linalg.norm(b)
    if norm_b == 0.0:
        return CgSolution(x=np.zeros(n), iterations=0, residual=0.0)
    x = np.zeros(n)
    r = b.copy()
    d = r.copy()
    rr = r @ r
    best_x, best_res = x.copy(), np.sqrt(rr) / norm_b
    for k in range(1, max_iter + 1):
        Md = M(d)
        alpha = rr / (d @ Md)
        x += alpha * d
        r -= alpha * Md
        rr_new = r @ r
        res = np.sqrt(rr_new) / norm_b
        if res < best_res:
            best_x, best_res = x.copy(), res
        if res <= tol:
            return CgSolution(x=x, iterations=k, residual=res)
        d = r + (rr_new / rr) * d
        rr = rr_new
    raise NoConvergenceError(
        f"cg: residual {best_res:.3e} > tol {tol:.3e} after {max_iter} iterations",
        best=best_x, residual=best_res, iterations=max_iter,
    )


def dense_sym_eig(M: np.ndarray, dense_limit: int = DENSE_LIMIT):
    """Full eigendecomposition of a dense symmetric matrix.

    Returns (eigenvalues ascending, orthonormal eigenvectors as columns).
    Guarded by a size limit; this is oracle/generator machinery, not the
    sampling path.
    """
    M = np.asarray(M)
    n = M.shape[0]
    if n > dense_limit:
        raise SizeLimitExceededError(f"n={n} exceeds dense limit {dense_limit}")
    w, V = np.linalg.eigh(M)
    return w, V


def cholesky_factor(M: np.ndarray) -> np.ndarray:
    """Upper-triangular R with R^T R = M, for dense SPD M."""
    try:
        return scipy.linalg.cholesky(np.asarray(M), lower=False)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(str(e)) from e


def second_smallest_eig(M: SymOperator, tol: float = 1e-8,
                        max_iter: int | None = None,
                        rng: np.random.Generator | None = None) -> float:
    """Second-smallest eigenvalue of a PSD operator whose null vector is 1.

    Lanczos restricted to the complement of span{1}: every iterate is
    re-orthogonalized against 1/sqrt(n) and against all previous Lanczos
    vectors, so the smallest Ritz value converges to the smallest
    eigenvalue in that complement.  Residual bound |beta * y_last| is the
    stopping test (it bounds the distance to a true eigenvalue).
    """
    n = M.n
    if n == 1:
        return 0.0
    if max_iter is None:
        max_iter = min(n - 1, 400)
    if rng is None:
        rng = np.random.default_rng(0)
    ones = np.full(n, 1.0 / np.sqrt(n))

    q = rng.standard_normal(n)
    q -= (ones @ q) * ones
    q /= np.linalg.norm(q)
    Q = np.empty((max_iter, n))
    Q[0] = q
    alphas, betas = [], []
    q_prev = np.zeros(n)
    beta = 0.0
    theta = np.inf
    for k in range(max_iter):
        u = M(Q[k])
        alpha = Q[k] @ u
        alphas.append(alpha)
        r = u - alpha * Q[k] - beta * q_prev
        # full reorthogonalization, including the deflated ones vector
        r -= (ones @ r) * ones
        r -= Q[: k + 1].T @ (Q[: k + 1] @ r)
        beta = np.linalg.norm(r)
        w = scipy.linalg.eigh_tridiagonal(
            np.asarray(alphas), np.asarray(betas),
            select="i", select_range=(0, 0), eigvals_only=False,
        )
        theta = w[0][0]
        y_last = w[1][-1, 0]
        resid = abs(beta * y_last)
        if resid <= tol * max(abs(theta), 1e-12):
            return float(theta)
        if beta <= 1e-14 * max(abs(alpha), 1.0):
            # Krylov space exhausted: Ritz values are exact eigenvalues
            return float(theta)
        if k + 1 >= max_iter:
            break
        q_prev = Q[k]
        Q[k + 1] = r / beta
        betas.append(beta)
    raise NoConvergenceError(
        f"lanczos: residual bound {abs(beta * y_last):.3e} after {max_iter} iterations",
        best=float(theta), residual=float(abs(beta * y_last)), iterations=max_iter,
    )


@dataclass(frozen=True)
class DiscReport:
    """Gershgorin disc geometry per row: center, radius, left-end."""

    centers: np.ndarray
    radii: np.ndarray
    left_ends: np.ndarray

    @property
    def min_left_end(self) -> float:
        return float(self.left_ends.min())


def disc_left_ends(M, s: np.ndarray | None = None) -> DiscReport:
    """Disc report of S M S^{-1} for diagonal S = diag(s) without forming it.

    Row i's center is M_ii (unchanged by the similarity); its radius is
    sum_{j != i} s_i |M_ij| / s_j.  With s = 1 this is the plain
    Gershgorin geometry.  M may be dense or scipy sparse, not
    necessarily symmetric.
    """
    n = M.shape[0]
    if s is None:
        s = np.ones(n)
    s = np.asarray(s, dtype=np.float64)
    if not (s > 0).all():
        raise ValueError("all scale factors must be strictly positive")
    inv_s = 1.0 / s
    if sparse.issparse(M):
        Mc = M.tocsr()
        diag = Mc.diagonal()
        absM = abs(Mc)
        row_tot = absM @ inv_s
    else:
        Md = np.asarray(M)
        diag = np.diagonal(Md).copy()
        row_tot = np.abs(Md) @ inv_s
    radii = s * row_tot - np.abs(diag)
    radii = np.maximum(radii, 0.0)  # clip the self-term cancellation noise
    centers = diag
    return DiscReport(centers=centers, radii=radii, left_ends=centers - radii)
