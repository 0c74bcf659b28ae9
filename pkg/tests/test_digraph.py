import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dgsamp.digraph import (
    diagnose,
    dump_graph,
    from_edges,
    gen_er_digraph,
    load_graph,
    normalized_adjacency,
    random_walk_laplacian,
    to_edges,
    validate,
)
from dgsamp.errors import (
    DuplicateEdgeError,
    NonPositiveWeightError,
    NotCoReachableError,
    SelfLoopError,
    SinkNodeError,
)
from dgsamp.spectral import disc_left_ends

from conftest import make_er


class TestFromEdges:
    def test_two_cycle_valid(self):
        g = from_edges(2, [(0, 1, 1.0), (1, 0, 1.0)])
        assert g.n == 2
        assert g.num_edges == 2

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            from_edges(2, [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0)])

    def test_non_positive_weight_rejected(self):
        with pytest.raises(NonPositiveWeightError):
            from_edges(2, [(0, 1, 0.0), (1, 0, 1.0)])
        with pytest.raises(NonPositiveWeightError):
            from_edges(2, [(0, 1, -0.5), (1, 0, 1.0)])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(DuplicateEdgeError):
            from_edges(2, [(0, 1, 1.0), (0, 1, 2.0), (1, 0, 1.0)])

    def test_sink_rejected(self):
        # star pointing out of the center: every leaf is a sink
        with pytest.raises(SinkNodeError):
            from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])

    def test_disjoint_cycles_not_co_reachable(self):
        with pytest.raises(NotCoReachableError):
            from_edges(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)])

    def test_three_cycle_co_reachable(self):
        g = from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
        diag = validate(g)
        assert diag.ok
        assert diag.co_reachable

    def test_csr_round_trip_bit_exact(self):
        g, _, _ = make_er(40, 0.2, 5)
        g2 = from_edges(g.n, to_edges(g))
        assert np.array_equal(g.row_offsets, g2.row_offsets)
        assert np.array_equal(g.col_indices, g2.col_indices)
        assert np.array_equal(g.weights, g2.weights)


class TestDiagnose:
    def test_star_reports_sinks(self):
        d = diagnose(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
        assert d.sink_nodes == [1, 2, 3]
        assert not d.ok

    def test_two_cycle_ok(self):
        d = diagnose(2, [(0, 1, 1.0), (1, 0, 1.0)])
        assert d.ok
        assert d.universal_node in (0, 1)

    def test_disjoint_components(self):
        d = diagnose(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)])
        assert not d.co_reachable
        assert d.sink_nodes == []


class TestNormalizedAdjacency:
    def test_two_cycle(self, two_cycle):
        _, wbar, _ = two_cycle
        assert np.allclose(wbar.csr.toarray(), [[0, 1], [1, 0]])

    def test_ratio_preserved(self):
        g = from_edges(3, [(0, 1, 2.0), (0, 2, 6.0), (1, 0, 1.0), (2, 0, 1.0)])
        wbar = normalized_adjacency(g)
        row0 = wbar.csr.toarray()[0]
        assert np.allclose(row0, [0.0, 0.25, 0.75])

    @given(st.integers(5, 120), st.floats(0.05, 0.5), st.integers(0, 10_000))
    def test_row_sums_one(self, n, p, seed):
        _, wbar, _ = make_er(n, p, seed)
        assert np.abs(wbar.row_sums() - 1.0).max() <= 1e-12


class TestRwLaplacian:
    def test_two_cycle(self, two_cycle):
        _, _, L = two_cycle
        assert np.allclose(L.matrix.toarray(), [[1, -1], [-1, 1]])

    def test_three_cycle_rows(self, three_cycle):
        _, _, L = three_cycle
        expect = np.array([[1, -1, 0], [0, 1, -1], [-1, 0, 1]], dtype=float)
        assert np.allclose(L.matrix.toarray(), expect)

    @given(st.integers(5, 120), st.floats(0.05, 0.5), st.integers(0, 10_000))
    def test_annihilates_constants(self, n, p, seed):
        _, _, L = make_er(n, p, seed)
        c = 2.7
        assert np.abs(L.matrix @ np.full(n, c)).max() <= 1e-12

    @given(st.integers(5, 120), st.floats(0.05, 0.5), st.integers(0, 10_000))
    def test_disc_left_ends_at_zero(self, n, p, seed):
        _, _, L = make_er(n, p, seed)
        report = disc_left_ends(L.matrix)
        assert np.allclose(report.centers, 1.0)
        assert np.abs(report.left_ends).max() <= 1e-12


class TestGenErDigraph:
    def test_p_zero_forced_structure(self):
        g = gen_er_digraph(5, 0.0, np.random.default_rng(0))
        edges = to_edges(g)
        assert g.num_edges == 5
        hub_in = {(s, d) for s, d, _ in edges if d == 4}
        assert hub_in == {(0, 4), (1, 4), (2, 4), (3, 4)}
        hub_out = [(s, d) for s, d, _ in edges if s == 4]
        assert len(hub_out) == 1 and hub_out[0][1] in range(4)

    def test_desk_scale_edge_count(self):
        g = gen_er_digraph(200, 0.1, np.random.default_rng(7))
        expected = 199 * 198 * 0.1 + 200
        assert 0.8 * expected <= g.num_edges <= 1.2 * expected
        assert validate(g).ok

    def test_same_seed_identical(self):
        g1 = gen_er_digraph(60, 0.15, np.random.default_rng(42))
        g2 = gen_er_digraph(60, 0.15, np.random.default_rng(42))
        assert to_edges(g1) == to_edges(g2)

    @given(st.integers(2, 80), st.floats(0.0, 0.6), st.integers(0, 10_000))
    def test_always_valid(self, n, p, seed):
        g = gen_er_digraph(n, p, np.random.default_rng(seed))
        assert validate(g).ok

    def test_weights_in_unit_interval(self):
        g = gen_er_digraph(100, 0.2, np.random.default_rng(3))
        assert (g.weights > 0).all() and (g.weights <= 1.0).all()


class TestGraphFile:
    def test_json_round_trip(self, tmp_path):
        g, _, _ = make_er(25, 0.2, 11)
        path = tmp_path / "g.json"
        dump_graph(g, path)
        g2 = load_graph(path)
        assert to_edges(g) == to_edges(g2)

    def test_load_rejects_bad_graph(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "edges": [[0, 0, 1.0], [0, 1, 1.0], [1, 0, 1.0]]}))
        with pytest.raises(SelfLoopError):
            load_graph(path)
