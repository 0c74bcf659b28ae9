"""Synthetic graph signal generators and evaluation-time normalization.

Three families: GS1 bandlimited in the eigenbasis of L^T L, GS2 drawn
from a Gaussian whose precision matrix is L^T L + omega*I, GS3 produced
by repeated one-hop diffusion of white noise.  All are deterministic
given their rng.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .digraph import NormalizedAdjacency
from .errors import ConstantSignalError
from .spectral import cholesky_factor


@dataclass(frozen=True)
class SignalSpec:
    """Which family to draw from, with its parameters."""

    kind: str  # "GS1" | "GS2" | "GS3"
    band: int | None = None  # GS1; defaults to ceil(0.1 n)
    omega: float = 0.1  # GS2
    alpha: float = 0.1  # GS3
    steps: int = 50  # GS3
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("GS1", "GS2", "GS3"):
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.band is not None and self.band < 1:
            raise ValueError(f"band must be >= 1, got {self.band}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")

    def band_for(self, n: int) -> int:
        b = self.band if self.band is not None else math.ceil(0.1 * n)
        if b > n:
            raise ValueError(f"band {b} exceeds n={n}")
        return b


def gen_gs1(eig: tuple[np.ndarray, np.ndarray], m: int,
            rng: np.random.Generator) -> np.ndarray:
    """Random combination of the first m eigenvectors (ascending order)."""
    _, V = eig
    n = V.shape[0]
    if not (1 <= m <= n):
        raise ValueError(f"band m={m} outside [1, {n}]")
    coeffs = rng.standard_normal(m)
    return V[:, :m] @ coeffs


def gen_gs2(M: np.ndarray, omega: float, rng: np.random.Generator) -> np.ndarray:
    """Zero-mean Gaussian draw with covariance (M + omega I)^{-1}.

    Factor the precision M + omega*I = R^T R and back-solve R x = z for
    standard normal z; no covariance matrix is ever inverted.
    """
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    n = M.shape[0]
    R = cholesky_factor(np.asarray(M) + omega * np.eye(n))
    z = rng.standard_normal(n)
    return scipy.linalg.solve_triangular(R, z, lower=False)


def gen_gs3(wbar: NormalizedAdjacency, alpha: float, steps: int,
            rng: np.random.Generator) -> np.ndarray:
    """Diffuse white noise: x <- (1-alpha) x + alpha Wbar x, `steps` times."""
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    x = rng.standard_normal(wbar.n)
    W = wbar.csr
    for _ in range(steps):
        x = (1.0 - alpha) * x + alpha * (W @ x)
    return x


def normalize_signal(x: np.ndarray) -> np.ndarray:
    """Center and scale so the result has zero mean and unit 2-norm.

    Divides by sqrt(n) times the population standard deviation, which
    makes ||x||_2 = 1 hold exactly up to rounding.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    centered = x - x.mean()
    std = np.sqrt((centered @ centered) / n)
    if std <= 0.0:
        raise ConstantSignalError("signal is constant; cannot normalize")
    return centered / (np.sqrt(n) * std)
