import hypothesis
import numpy as np
import pytest

from dgsamp.digraph import from_edges, gen_er_digraph, normalized_adjacency, random_walk_laplacian

hypothesis.settings.register_profile(
    "numeric", deadline=None, max_examples=25,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("numeric")


@pytest.fixture
def two_cycle():
    g = from_edges(2, [(0, 1, 1.0), (1, 0, 1.0)])
    wbar = normalized_adjacency(g)
    return g, wbar, random_walk_laplacian(wbar)


@pytest.fixture
def three_cycle():
    g = from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
    wbar = normalized_adjacency(g)
    return g, wbar, random_walk_laplacian(wbar)


def make_er(n, p, seed):
    """Graph plus derived matrices from one seeded draw."""
    g = gen_er_digraph(n, p, np.random.default_rng(seed))
    wbar = normalized_adjacency(g)
    return g, wbar, random_walk_laplacian(wbar)
