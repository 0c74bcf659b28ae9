"""Comparison samplers: uniform random and greedy E-optimal selection.

The E-optimal greedy works on the symmetric surrogate L^T L: take its
first m eigenvectors as rows U, then repeatedly add the node whose row
maximizes the smallest singular value of the selected-row submatrix.
That value is evaluated for every candidate at once through the bordered
Gram matrix and its secular equation, so each greedy step costs one
small eigendecomposition plus vectorized bisection instead of one SVD
per candidate.
"""

from __future__ import annotations

import numpy as np

from .digraph import RwLaplacian
from .recon import SampleSet
from .spectral import dense_sym_eig

DENSE_LIMIT = 2000


def random_sample(n: int, K: int, rng: np.random.Generator) -> SampleSet:
    """Uniform K-subset of the nodes, without replacement."""
    if not (0 <= K <= n):
        raise ValueError(f"K={K} outside [0, {n}]")
    return SampleSet(rng.choice(n, size=K, replace=False))


def _bordered_lambda_min(theta: np.ndarray, W: np.ndarray, beta: np.ndarray,
                         iters: int = 60) -> np.ndarray:
    """Smallest eigenvalue of [[Theta, w], [w^T, beta]] per candidate.

    Theta is diagonal (shared), columns of W and entries of beta vary by
    candidate.  The smallest eigenvalue is the leftmost root of the
    secular function f(x) = (beta - x) - sum_i w_i^2 / (theta_i - x),
    which is strictly decreasing left of min(theta); bisection on
    [min(theta, beta) - ||w||, min(theta_1, beta)] converges to it.  By
    interlacing the result can never exceed theta_1, which also covers
    the w_1 = 0 corner where the root coincides with theta_1.
    """
    w2 = W * W
    norm_w = np.sqrt(w2.sum(axis=0))
    ub = np.minimum(theta[0], beta)
    lo = np.minimum(theta.min(), beta) - norm_w - 1e-30
    hi = ub.copy()
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            f = (beta - mid) - (w2 / (theta[:, None] - mid[None, :])).sum(axis=0)
            root_right = f > 0
            lo = np.where(root_right, mid, lo)
            hi = np.where(root_right, hi, mid)
    return np.minimum(0.5 * (lo + hi), ub)


def e_optimal_greedy(L: RwLaplacian, K: int, m: int | None = None,
                     dense_limit: int = DENSE_LIMIT) -> SampleSet:
    """Greedy smallest-singular-value maximization over eigenvector rows."""
    n = L.n
    if not (1 <= K <= n):
        raise ValueError(f"K={K} outside [1, {n}]")
    if m is None:
        m = K
    if m < K:
        raise ValueError(f"bandwidth m={m} smaller than budget K={K}")
    if K == n:
        return SampleSet(np.arange(n))
    Ld = L.matrix.toarray()
    _, V = dense_sym_eig(Ld.T @ Ld, dense_limit=dense_limit)
    U = V[:, :m]  # row v is node v's coordinates in the first m modes
    row_sq = (U * U).sum(axis=1)

    selected: list[int] = []
    available = np.ones(n, dtype=bool)
    # C[t] holds U[selected[t]] @ U.T, i.e. inner products with every row
    C = np.empty((K, n))
    for t in range(K):
        if t == 0:
            scores = np.where(available, row_sq, -np.inf)
        else:
            R_gram = C[:t][:, selected]  # t x t Gram of selected rows
            theta, Q = np.linalg.eigh(R_gram)
            W = Q.T @ C[:t][:, available]
            scores_av = _bordered_lambda_min(theta, W, row_sq[available])
            scores = np.full(n, -np.inf)
            scores[available] = scores_av
        pick = int(np.argmax(scores))
        selected.append(pick)
        available[pick] = False
        C[t] = U @ U[pick]
    return SampleSet(np.asarray(selected, dtype=np.int64))
