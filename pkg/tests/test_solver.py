from __future__ import annotations

from fractions import Fraction
from math import lcm

import pytest

from conftest import make_random_graph
from mdnet import (
    Graph,
    InputError,
    SolverConfig,
    SolverError,
    enumerate_partitions,
    modularity_density,
    solve,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_local_search,
    weak_condition,
)
from mdnet._bnb import bnb_python


class TestEnumeratePartitions:
    def test_bell_3(self):
        parts = list(enumerate_partitions(3))
        assert len(parts) == 5
        assert parts[0].assign == (1, 1, 1)
        assert parts[-1].assign == (1, 2, 3)

    def test_stirling_4_2(self):
        assert sum(1 for _ in enumerate_partitions(4, m=2)) == 7

    def test_all_canonical_and_unique(self):
        seen = set()
        for p in enumerate_partitions(6):
            assert p.assign[0] == 1
            running_max = 0
            for c in p.assign:
                assert c <= running_max + 1
                running_max = max(running_max, c)
            assert p.assign not in seen
            seen.add(p.assign)
        assert len(seen) == 203  # Bell(6)

    def test_bell_12_stream_count(self):
        assert sum(1 for _ in enumerate_partitions(12)) == 4_213_597

    def test_refusal_names_the_blowup(self):
        with pytest.raises(SolverError, match="Bell"):
            list(enumerate_partitions(15))

    def test_m_filter_validation(self):
        with pytest.raises(InputError):
            list(enumerate_partitions(4, m=5))


class TestExhaustive:
    def test_p3_single_community_wins_with_flag(self, p3):
        cfg = SolverConfig(method="exhaustive", include_single_community=True, m_min=1)
        res = solve_exhaustive(p3, cfg)
        assert res.D == Fraction(4, 3)
        assert res.m == 1
        assert res.status == "proved-optimal"
        assert res.nodes_or_iterations == 5  # Bell(3)

    def test_p3_default_excludes_single_community(self, p3):
        res = solve_exhaustive(p3, SolverConfig(method="exhaustive"))
        assert res.m >= 2
        assert res.D == Fraction(-1, 2)

    def test_bridge_splits_at_bridge(self, bridge8):
        res = solve_exhaustive(bridge8, SolverConfig(method="exhaustive", m_min=2, m_max=2))
        assert res.D == Fraction(11, 2)
        assert res.best.blocks() == ((1, 2, 3, 4), (5, 6, 7, 8))

    def test_k4_resists_splitting(self, k4):
        res = solve_exhaustive(k4, SolverConfig(method="exhaustive", m_min=2, m_max=2))
        assert res.D == -2
        assert res.best.assign == (1, 1, 1, 2)  # first enumerated among the ties

    def test_size_refusal(self):
        g = make_random_graph(15, 0.3, 0)
        with pytest.raises(SolverError, match="n=15"):
            solve_exhaustive(g, SolverConfig(method="exhaustive"))

    def test_weak_filter_respected(self):
        g = make_random_graph(7, 0.5, 3)
        res = solve_exhaustive(g, SolverConfig(method="exhaustive", weak_L=1))
        for l in range(1, res.m + 1):
            assert weak_condition(g, res.best, l, 1)

    def test_weak_can_rule_out_everything(self):
        g = Graph.from_edges([(1, 2)])
        with pytest.raises(SolverError, match="no partition"):
            solve_exhaustive(g, SolverConfig(method="exhaustive", weak_L=1))


class TestBranchAndBound:
    def test_needs_fixed_m(self, bridge8):
        with pytest.raises(InputError, match="fixed"):
            solve_branch_and_bound(bridge8, SolverConfig(method="bnb", m_min=2, m_max=3))

    def test_bridge(self, bridge8):
        res = solve_branch_and_bound(bridge8, SolverConfig(method="bnb", m_min=2, m_max=2))
        assert res.D == Fraction(11, 2)
        assert res.status == "proved-optimal"

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_matches_exhaustive_on_random_graphs(self, m):
        for seed in range(8):
            g = make_random_graph(7 + seed % 3, 0.45, seed)
            ex = solve_exhaustive(g, SolverConfig(method="exhaustive", m_min=m, m_max=m))
            bb = solve_branch_and_bound(g, SolverConfig(method="bnb", m_min=m, m_max=m))
            assert bb.D == ex.D, (seed, m)

    def test_python_twin_agrees_with_kernel(self):
        for seed in range(6):
            g = make_random_graph(8, 0.5, seed + 50)
            n = g.n
            adj = [[w - 1 for w in g.neighbors(v)] for v in range(1, n + 1)]
            deg = list(g.degree)
            order = sorted(range(n), key=lambda v: (-deg[v], v))
            sufmax = [0] * (n + 1)
            for i in range(n - 1, -1, -1):
                sufmax[i] = max(sufmax[i + 1], deg[order[i]])
            Z = lcm(*range(1, n + 1))
            zdiv = [0] + [Z // s for s in range(1, n + 1)]
            best, nodes, assign = bnb_python(n, 3, adj, deg, order, sufmax, zdiv, -1)
            res = solve_branch_and_bound(g, SolverConfig(method="bnb", m_min=3, m_max=3))
            assert Fraction(best, Z) == res.D
            assert nodes == res.nodes_or_iterations

    def test_weak_constrained_result_is_feasible(self):
        g = make_random_graph(8, 0.5, 11)
        res = solve_branch_and_bound(g, SolverConfig(method="bnb", m_min=2, m_max=2, weak_L=0))
        for l in range(1, res.m + 1):
            assert weak_condition(g, res.best, l, 0)
        unconstrained = solve_branch_and_bound(g, SolverConfig(method="bnb", m_min=2, m_max=2))
        assert res.D <= unconstrained.D


class TestLocalSearch:
    def test_deterministic_including_counters(self, bridge8):
        cfg = SolverConfig(seed=3, restarts=8)
        a = solve_local_search(bridge8, cfg)
        b = solve_local_search(bridge8, cfg)
        assert a.D == b.D
        assert a.best == b.best
        assert a.nodes_or_iterations == b.nodes_or_iterations

    def test_never_beats_oracle(self):
        for seed in range(10):
            g = make_random_graph(6 + seed % 5, 0.45, seed + 7)
            oracle = solve_exhaustive(g, SolverConfig(method="exhaustive"))
            heur = solve_local_search(g, SolverConfig(seed=seed, restarts=8))
            assert heur.D <= oracle.D

    def test_finds_bridge_optimum(self, bridge8):
        res = solve_local_search(bridge8, SolverConfig(seed=0, restarts=8, m_min=2, m_max=2))
        assert res.D == Fraction(11, 2)
        assert res.status == "heuristic"

    def test_weak_results_always_feasible(self, fig1_inst):
        g = fig1_inst.graph
        for level in (0, 1):
            res = solve_local_search(g, SolverConfig(weak_L=level, seed=7, restarts=8))
            for l in range(1, res.m + 1):
                assert weak_condition(g, res.best, l, level)

    def test_unconstrained_fig1_keeps_negative_community(self, fig1_inst):
        res = solve_local_search(
            fig1_inst.graph, SolverConfig(seed=7, restarts=32, m_min=8, m_max=8)
        )
        densities = [c.density for c in res.report.communities]
        assert res.D == Fraction(227, 12)
        assert any(d < 0 for d in densities)

    def test_infeasible_when_weak_unreachable(self):
        g = Graph.from_edges([(1, 2)])
        with pytest.raises(SolverError, match="weak-feasible"):
            solve_local_search(g, SolverConfig(weak_L=1, seed=0, restarts=4))

    def test_recovers_certified_optima_at_free_m(self, fig1_inst, fig2_inst):
        res1 = solve_local_search(fig1_inst.graph, SolverConfig(seed=7, restarts=32))
        assert (res1.D, res1.m) == (Fraction(227, 12), 8)
        res2 = solve_local_search(fig2_inst.graph, SolverConfig(seed=7, restarts=32))
        assert (res2.D, res2.m) == (Fraction(12), 3)


class TestConfigAndResult:
    def test_unknown_method(self):
        with pytest.raises(InputError):
            SolverConfig(method="annealing").validate()

    def test_m_range_validation(self, bridge8):
        with pytest.raises(InputError, match="flag"):
            solve_exhaustive(bridge8, SolverConfig(method="exhaustive", m_min=1))
        with pytest.raises(InputError, match="exceeds"):
            solve_exhaustive(bridge8, SolverConfig(method="exhaustive", m_min=2, m_max=9))

    def test_dispatcher(self, bridge8):
        res = solve(bridge8, SolverConfig(method="bnb", m_min=2, m_max=2))
        assert res.method == "bnb"

    def test_result_json_fields(self, bridge8):
        res = solve(bridge8, SolverConfig(method="bnb", m_min=2, m_max=2))
        payload = res.to_json_dict()
        assert payload["D"] == "5.5"
        assert payload["D_rational"] == "11/2"
        assert payload["status"] == "proved-optimal"
        assert payload["partition"]["1"] == 1
        assert payload["partition"]["5"] == 2
        assert "report" in payload and "nodes_or_iterations" in payload
