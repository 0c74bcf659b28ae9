"""Experiment harness: MSE versus budget per sampler, and runtime scaling.

Every random draw is seeded by a stable hash of the master seed plus the
cell coordinates, so any single cell can be reproduced in isolation and
two runs with the same configuration produce identical numbers (wall
times excepted).  Signals are keyed by (graph, kind, trial) only, so all
samplers are scored on the same draws.
"""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import hashlib
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import baselines, signals
from .digraph import DiGraph, gen_er_digraph, normalized_adjacency, random_walk_laplacian
from .gda_direct import gda_direct_sample
from .recon import SampleSet, mse, reconstruct
from .spectral import dense_sym_eig

METHODS = ("gda-direct", "random", "e-optimal")

CSV_COLUMNS = ("method", "K", "graph_idx", "signal_kind", "trial",
               "mse", "sample_time_s", "recon_time_s")


def derive_seed(master: int, *parts) -> np.random.SeedSequence:
    """Stable per-cell seed: SHA-256 over the master seed and coordinates."""
    payload = repr((int(master),) + tuple(parts)).encode()
    digest = hashlib.sha256(payload).digest()
    return np.random.SeedSequence(int.from_bytes(digest[:16], "big"))


def _rng(master: int, *parts) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *parts))


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 200
    p: float = 0.1
    num_graphs: int = 5
    num_signals_per_graph: int = 200
    budgets: tuple = (10, 20, 30, 40, 50, 60)
    methods: tuple = METHODS
    signal_kinds: tuple = ("GS1", "GS2", "GS3")
    gs1_band: int | None = None  # ceil(0.1 n) when unset
    gs2_omega: float = 0.1
    gs3_alpha: float = 0.1
    gs3_steps: int = 50
    mu: float = 0.001
    cg_tol: float = 1e-8
    master_seed: int = 0
    noise_std: float = 0.0

    def __post_init__(self):
        if not self.methods:
            raise ValueError("need at least one method")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if any(k > self.n for k in self.budgets):
            raise ValueError("budgets must not exceed n")
        unknown_kinds = set(self.signal_kinds) - {"GS1", "GS2", "GS3"}
        if unknown_kinds:
            raise ValueError(f"unknown signal kinds: {sorted(unknown_kinds)}")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            obj = json.load(fh)
        for key in ("budgets", "methods", "signal_kinds"):
            if key in obj:
                obj[key] = tuple(obj[key])
        return cls(**obj)

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(dataclasses.asdict(self), fh, indent=2)


@dataclass(frozen=True)
class ResultRow:
    method: str
    K: int
    graph_idx: int
    signal_kind: str
    trial: int
    mse: float
    sample_time_s: float
    recon_time_s: float
    error: str | None = None

    def sort_key(self):
        return (self.method, self.K, self.graph_idx, self.signal_kind, self.trial)


def run_sampler(method: str, graph: DiGraph, L, K: int, mu: float,
                rng: np.random.Generator) -> SampleSet:
    if method == "gda-direct":
        samples, _, _ = gda_direct_sample(graph, mu, K)
        return samples
    if method == "random":
        return baselines.random_sample(graph.n, K, rng)
    if method == "e-optimal":
        return baselines.e_optimal_greedy(L, K)
    raise ValueError(f"unknown method {method!r}")


class _GraphContext:
    """Everything derived from one generated graph, built lazily."""

    def __init__(self, cfg: ExperimentConfig, graph_idx: int):
        self.cfg = cfg
        self.idx = graph_idx
        self.graph = gen_er_digraph(cfg.n, cfg.p, _rng(cfg.master_seed, "graph", graph_idx))
        self.wbar = normalized_adjacency(self.graph)
        self.L = random_walk_laplacian(self.wbar)
        self._gram = None
        self._eig = None
        self._signals: dict = {}

    @property
    def gram(self):
        if self._gram is None:
            Ld = self.L.matrix.toarray()
            self._gram = Ld.T @ Ld
        return self._gram

    @property
    def eig(self):
        if self._eig is None:
            self._eig = dense_sym_eig(self.gram)
        return self._eig

    def signal(self, kind: str, trial: int) -> np.ndarray:
        key = (kind, trial)
        if key not in self._signals:
            cfg = self.cfg
            rng = _rng(cfg.master_seed, "signal", self.idx, kind, trial)
            if kind == "GS1":
                band = cfg.gs1_band or math.ceil(0.1 * cfg.n)
                x = signals.gen_gs1(self.eig, band, rng)
            elif kind == "GS2":
                x = signals.gen_gs2(self.gram, cfg.gs2_omega, rng)
            else:
                x = signals.gen_gs3(self.wbar, cfg.gs3_alpha, cfg.gs3_steps, rng)
            self._signals[key] = signals.normalize_signal(x)
        return self._signals[key]


def _run_cell(ctx: _GraphContext, method: str, K: int) -> list[ResultRow]:
    """All rows for one (graph, method, K): sample once, reconstruct each signal."""
    cfg = ctx.cfg
    rows = []
    t0 = time.perf_counter()
    try:
        s = run_sampler(method, ctx.graph, ctx.L,
                        K, cfg.mu, _rng(cfg.master_seed, "sample", ctx.idx, method, K))
        sample_time = time.perf_counter() - t0
        sample_err = None
    except Exception as e:  # noqa: BLE001 - cells must not kill the sweep
        sample_time = time.perf_counter() - t0
        s, sample_err = None, f"sampler: {type(e).__name__}: {e}"
    for kind in cfg.signal_kinds:
        for trial in range(cfg.num_signals_per_graph):
            if sample_err is not None:
                rows.append(ResultRow(method, K, ctx.idx, kind, trial,
                                      float("nan"), sample_time, 0.0, sample_err))
                continue
            x = ctx.signal(kind, trial)
            y = x[s.indices]
            if cfg.noise_std > 0:
                noise_rng = _rng(cfg.master_seed, "noise", ctx.idx, method, K, kind, trial)
                y = y + cfg.noise_std * noise_rng.standard_normal(len(y))
            t1 = time.perf_counter()
            try:
                res = reconstruct(y, s, cfg.mu, ctx.L, tol=cfg.cg_tol)
                rows.append(ResultRow(method, K, ctx.idx, kind, trial,
                                      mse(x, res.x), sample_time,
                                      time.perf_counter() - t1))
            except Exception as e:  # noqa: BLE001
                rows.append(ResultRow(method, K, ctx.idx, kind, trial,
                                      float("nan"), sample_time,
                                      time.perf_counter() - t1,
                                      f"recon: {type(e).__name__}: {e}"))
    return rows


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list[ResultRow]:
    """Full sweep; rows come back sorted by (method, K, graph, kind, trial)."""
    rows: list[ResultRow] = []
    for g_idx in range(cfg.num_graphs):
        ctx = _GraphContext(cfg, g_idx)
        # materialize signals up front so worker threads only read
        for kind in cfg.signal_kinds:
            for trial in range(cfg.num_signals_per_graph):
                ctx.signal(kind, trial)
        cells = [(method, K) for method in cfg.methods for K in cfg.budgets]
        if jobs > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_run_cell, ctx, m, K) for m, K in cells]
                for fut in futures:
                    rows.extend(fut.result())
        else:
            for method, K in cells:
                rows.extend(_run_cell(ctx, method, K))
    rows.sort(key=ResultRow.sort_key)
    return rows


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_results(rows: list[ResultRow], path, fmt: str = "csv") -> None:
    """CSV with the fixed column set, or JSON with full row objects."""
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                writer.writerow([r.method, r.K, r.graph_idx, r.signal_kind, r.trial,
                                 _fmt(r.mse), _fmt(r.sample_time_s), _fmt(r.recon_time_s)])
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump([dataclasses.asdict(r) for r in rows], fh, indent=1)
    else:
        raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class TimingRow:
    method: str
    n: int
    seconds: float


def timing_sweep(ns, p: float, budget_fraction: float, methods,
                 seed: int = 0, mu: float = 0.001) -> list[TimingRow]:
    """One sampling run per (size, method) on a fresh graph per size."""
    ns = list(ns)
    if ns != sorted(ns):
        raise ValueError("sizes must be ascending")
    out = []
    for n in ns:
        graph = gen_er_digraph(n, p, _rng(seed, "graph", n))
        L = random_walk_laplacian(normalized_adjacency(graph))
        K = max(1, int(round(budget_fraction * n)))
        for method in methods:
            t0 = time.perf_counter()
            run_sampler(method, graph, L, K, mu, _rng(seed, "sample", n, method, K))
            out.append(TimingRow(method=method, n=n, seconds=time.perf_counter() - t0))
    return out
