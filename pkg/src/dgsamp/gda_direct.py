"""End-to-end eigendecomposition-free sampling on directed graphs.

Given the budget K and prior weight mu, closed-form scalars delta and
rho are derived from a constant c so that every eigenvalue lower bound
certified on delta*A + rho*L transfers to the E-optimal objective
lambda_min(A + mu L^T L).  The exact c requires a combinatorial minimum
over all K-subsets; the production path replaces the denominator with a
first-order perturbation estimate that costs O(1) (mu <= 1) or O(edges)
(mu > 1).  Brute-force counterparts for both the constant and the full
sampling objective live here too, gated to tiny graphs; they are the
oracles the fast path is tested against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .digraph import DiGraph, NormalizedAdjacency, RwLaplacian, normalized_adjacency, random_walk_laplacian
from .errors import DegenerateSpectrumError, InvalidRegimeError, SizeLimitExceededError
from .gdas import GdasOutcome, gdas_sample
from .recon import SampleSet
from .spectral import gram_operator, second_smallest_eig

BRUTE_FORCE_LIMIT = 14


@dataclass(frozen=True)
class GdaParams:
    """Scalars feeding the disc-alignment sampler, with their regime."""

    mu: float
    eps: float
    c: float
    delta: float
    rho: float
    K: int
    regime: str  # "mu_le_1" | "mu_gt_1"

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise InvalidRegimeError(f"eps={self.eps} not in (0, 1)")
        if self.c <= 0 or self.delta <= 0 or self.rho <= 0:
            raise InvalidRegimeError("c, delta, rho must all be positive")
        if self.regime == "mu_le_1":
            if self.eps * self.mu >= 1.0:
                raise InvalidRegimeError(f"eps*mu={self.eps * self.mu} >= 1")
        elif self.regime == "mu_gt_1":
            if self.eps >= self.mu:
                raise InvalidRegimeError(f"eps={self.eps} >= mu={self.mu}")
        else:
            raise InvalidRegimeError(f"unknown regime {self.regime!r}")


def regime_of(mu: float) -> str:
    return "mu_le_1" if mu <= 1.0 else "mu_gt_1"


def numerator_c(wbar: NormalizedAdjacency, K: int) -> float:
    """3 + max over columns of the sum of the K-1 largest column entries.

    K=1 gives 3 (empty sum).  Unstored entries are zero and never beat a
    stored positive weight, so only each column's nonzeros are examined:
    O(edges) selection work in total.
    """
    n = wbar.n
    if not (1 <= K <= n):
        raise ValueError(f"K={K} outside [1, {n}]")
    if K == 1:
        return 3.0
    csc = wbar.csc
    best = 0.0
    take = K - 1
    for i in range(n):
        col = csc.data[csc.indptr[i]:csc.indptr[i + 1]]
        if len(col) <= take:
            tot = col.sum()
        else:
            tot = np.partition(col, len(col) - take)[len(col) - take:].sum()
        if tot > best:
            best = float(tot)
    return 3.0 + best


def approx_denominator(L: RwLaplacian, mu: float, eps: float, K: int, n: int) -> float:
    """First-order estimate of the denominator of c.

    mu <= 1: the perturbed zero eigenvalue, K*eps/n.  mu > 1: eps times
    the smallest diagonal quadratic form of L^T L, i.e. the smallest
    squared column norm of L (always >= 1 because of the unit diagonal).
    """
    if not (0.0 < eps < 1.0):
        raise InvalidRegimeError(f"eps={eps} not in (0, 1)")
    if mu <= 1.0:
        return K * eps / n
    csc = L.matrix.tocsc()
    sq = csc.data ** 2
    col_norms = np.add.reduceat(sq, csc.indptr[:-1])
    return eps * float(col_norms.min())


def choose_epsilon(lambda2: float, n: int, K: int, mu: float) -> float:
    """Default eps per regime.

    mu <= 1: half the first-order validity bound lambda2 * n / K, capped
    at 0.9, so the perturbed zero eigenvalue stays the smallest.  mu > 1:
    min(0.9, mu/2), which satisfies both eps < 1 and eps < mu.
    """
    if mu <= 1.0:
        if lambda2 <= 1e-12:
            raise DegenerateSpectrumError(
                f"second eigenvalue {lambda2} is numerically zero; "
                "the graph violates the rank n-1 assumption"
            )
        eps = min(0.9, 0.5 * lambda2 * n / K)
        # guard eps*mu < 1; inactive for mu <= 1 but harmless
        eps = min(eps, 0.999 / max(mu, 1e-300))
        return float(max(eps, 1e-12))
    return float(min(0.9, mu / 2.0))


def delta_rho(mu: float, eps: float, c: float) -> tuple[float, float]:
    """Closed-form (delta, rho) for the given regime of mu."""
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    if mu <= 1.0:
        if eps * mu >= 1.0:
            raise InvalidRegimeError(f"eps*mu={eps * mu} >= 1 with mu <= 1")
        delta = np.sqrt(1.0 - eps * mu)
        rho = (-delta * c + np.sqrt(delta * delta * c * c + 4.0 * mu)) / 2.0
    else:
        if eps >= mu:
            raise InvalidRegimeError(f"eps={eps} >= mu={mu} with mu > 1")
        rho = np.sqrt(mu - eps)
        delta = (-rho * c + np.sqrt(rho * rho * c * c + 4.0)) / 2.0
    return float(delta), float(rho)


def gda_direct_sample(g: DiGraph, mu: float, K: int, eps: float | None = None,
                      tol_T: float | None = None, lambda2_tol: float = 1e-6,
                      ) -> tuple[SampleSet, GdaParams, GdasOutcome]:
    """Full sampling pipeline: parameters, then the disc-alignment search.

    Returns the K chosen nodes together with the parameters and the
    sampler outcome so results can be audited.
    """
    n = g.n
    if not (1 <= K < n):
        raise ValueError(f"budget K={K} must satisfy 1 <= K < n={n}")
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    wbar = normalized_adjacency(g)
    L = random_walk_laplacian(wbar)
    num = numerator_c(wbar, K)
    if eps is None:
        if mu <= 1.0:
            lam2 = second_smallest_eig(gram_operator(L.matrix), tol=lambda2_tol)
            eps = choose_epsilon(lam2, n, K, mu)
        else:
            eps = choose_epsilon(0.0, n, K, mu)
    denom = approx_denominator(L, mu, eps, K, n)
    c = num / denom
    delta, rho = delta_rho(mu, eps, c)
    params = GdaParams(mu=mu, eps=eps, c=c, delta=delta, rho=rho, K=K,
                       regime=regime_of(mu))
    outcome = gdas_sample(L, delta, rho, K, tol_T=tol_T)
    return outcome.samples, params, outcome


# ---------------------------------------------------------------------------
# brute-force oracles (tiny graphs only)

def _check_brute_force_size(n: int):
    if n > BRUTE_FORCE_LIMIT:
        raise SizeLimitExceededError(
            f"n={n} exceeds brute-force limit {BRUTE_FORCE_LIMIT}"
        )


def _dense_gram(L: RwLaplacian) -> np.ndarray:
    Ld = L.matrix.toarray()
    return Ld.T @ Ld


def exact_denominator_bruteforce(L: RwLaplacian, K: int, eps: float, mu: float) -> float:
    """Exact min over all K-subsets of the regime's smallest eigenvalue."""
    n = L.n
    _check_brute_force_size(n)
    gram = _dense_gram(L)
    if mu <= 1.0:
        base, bump = gram, eps  # lambda_min(L^T L + eps * A)
    else:
        base, bump = eps * gram, 1.0  # lambda_min(A + eps * L^T L)
    best = np.inf
    for subset in itertools.combinations(range(n), K):
        M = base.copy()
        idx = np.asarray(subset)
        M[idx, idx] += bump
        lam = np.linalg.eigvalsh(M)[0]
        if lam < best:
            best = float(lam)
    return best


def exact_c_bruteforce(L: RwLaplacian, K: int, eps: float, mu: float) -> float:
    """c with its denominator computed by exhaustive subset enumeration."""
    num = numerator_c(L.wbar, K)
    return num / exact_denominator_bruteforce(L, K, eps, mu)


def exact_sampler_bruteforce(L: RwLaplacian, mu: float, K: int) -> tuple[SampleSet, float]:
    """Exhaustive maximizer of lambda_min(A + mu L^T L) over K-subsets.

    Ties resolve to the lexicographically smallest subset (enumeration
    order plus strict improvement).
    """
    n = L.n
    _check_brute_force_size(n)
    gram = _dense_gram(L)
    best_val = -np.inf
    best_subset = None
    for subset in itertools.combinations(range(n), K):
        M = mu * gram
        idx = np.asarray(subset)
        M[idx, idx] += 1.0
        lam = float(np.linalg.eigvalsh(M)[0])
        if lam > best_val:
            best_val, best_subset = lam, subset
    return SampleSet(np.asarray(best_subset, dtype=np.int64)), best_val
