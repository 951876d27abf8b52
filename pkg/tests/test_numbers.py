"""Exhaustive pebbling-number searches, witnesses, and budget accounting."""

import random
from math import comb

import pytest

from pebblekit import (
    BudgetExceededError,
    Configuration,
    Distribution,
    FamilyError,
    PebblingError,
    RootedTree,
    build_graph,
    build_J_r,
    check_pi_t_equals,
    demands_of_size,
    enumerate_configs,
    find_unsolvable_witness,
    is_solvable,
    max_path_partition,
    metrics,
    multi_demand_scan,
    num_configs,
    pi_D,
    pi_t,
    random_tree,
    tree_dust_witness,
    tree_pi,
    two_path,
    two_path_lower_candidates,
    two_path_pi_t,
    unrank_config,
    verify_target_conjecture,
)

from oracles import (
    brute_pi,
    brute_unsolvable_set,
    random_connected_edges,
)


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def test_enumerate_configs_small_case_is_descending_lex():
    got = [c.counts for c in enumerate_configs(3, 2)]
    assert got == [(2, 0, 0), (1, 1, 0), (1, 0, 1),
                   (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_enumerate_configs_counts_and_endpoints():
    for n in (1, 2, 4, 5):
        for m in (0, 1, 3, 6):
            seq = list(enumerate_configs(n, m))
            assert len(seq) == num_configs(n, m) == comb(n + m - 1, n - 1)
            first = [0] * n
            first[0] = m
            assert seq[0].counts == tuple(first)
            assert all(c.size == m for c in seq)
            assert len({c.counts for c in seq}) == len(seq)
    with pytest.raises(ValueError):
        list(enumerate_configs(0, 1))
    with pytest.raises(ValueError):
        list(enumerate_configs(3, -1))


def test_unrank_config_is_the_ascending_order():
    for n, m in ((3, 4), (4, 3), (5, 2)):
        descending = [c.counts for c in enumerate_configs(n, m)]
        ascending = [unrank_config(n, m, r).counts
                     for r in range(num_configs(n, m))]
        assert ascending == descending[::-1]
    with pytest.raises(ValueError):
        unrank_config(3, 2, -1)
    with pytest.raises(ValueError):
        unrank_config(3, 2, num_configs(3, 2))


def test_find_unsolvable_witness_path_example():
    p3 = path_graph(3)
    d = Distribution.stacked(3, 0, 1)
    res = find_unsolvable_witness(p3, d, 3)
    assert res.found and res.witness.counts == (0, 0, 3)
    assert not find_unsolvable_witness(p3, d, 4).found
    with pytest.raises(ValueError):
        find_unsolvable_witness(p3, d, -1)


def test_find_unsolvable_witness_petersen(petersen):
    d = Distribution.stacked(10, 0, 1)
    res = find_unsolvable_witness(petersen, d, 9)
    assert res.found and res.witness == build_J_r(petersen, 0)
    assert not is_solvable(petersen, res.witness, d).solvable


def test_witness_scan_matches_brute_force_enumeration():
    rng = random.Random(909)
    for trial in range(10):
        n = rng.randrange(3, 6)
        g = build_graph(n, random_connected_edges(n, rng.randrange(0, 3), rng))
        r = rng.randrange(n)
        demands = [0] * n
        demands[r] = 1
        size = brute_pi(g, tuple(demands)) - 1
        d = Distribution.stacked(n, r, 1)
        want = brute_unsolvable_set(g, tuple(demands), size)
        res = find_unsolvable_witness(g, d, size, collect_all=True)
        got = [c.counts for c in res.witnesses]
        assert sorted(got) == sorted(want)
        assert res.witness.counts == min(want)
        assert res.configs_checked == num_configs(n, size)


def test_witness_scan_jobs_and_symmetry_agree(petersen):
    d = Distribution.stacked(10, 0, 1)
    serial = find_unsolvable_witness(petersen, d, 9)
    parallel = find_unsolvable_witness(petersen, d, 9, jobs=2)
    reduced = find_unsolvable_witness(petersen, d, 9, symmetry=True)
    assert serial.witness == parallel.witness == reduced.witness
    assert reduced.configs_checked <= serial.configs_checked


def test_multi_demand_scan_reports_first_failure():
    p3 = path_graph(3)
    demands = [Distribution.stacked(3, 0, 1), Distribution.stacked(3, 2, 1)]
    scan = multi_demand_scan(p3, demands, 3)
    assert scan["failure"]["demand_index"] == 0
    assert scan["failure"]["config"].counts == (0, 0, 3)
    clean = multi_demand_scan(p3, demands, 4)
    assert clean["failure"] is None
    assert clean["configs_checked"] == num_configs(3, 4)


def test_pi_D_examples(petersen):
    p3 = path_graph(3)
    assert pi_D(p3, Distribution.stacked(3, 0, 1)) == 4
    k4 = build_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert pi_D(k4, Distribution.stacked(4, 0, 1)) == 4
    assert pi_D(petersen, Distribution.stacked(10, 0, 1), hint=10) == 10
    with pytest.raises(PebblingError):
        pi_D(p3, Distribution((0, 0, 0)))


def test_pi_D_matches_brute_force():
    rng = random.Random(910)
    for trial in range(8):
        n = rng.randrange(3, 6)
        g = build_graph(n, random_connected_edges(n, rng.randrange(0, 3), rng))
        r = rng.randrange(n)
        demands = [0] * n
        demands[r] = 1
        assert pi_D(g, Distribution(tuple(demands))) == brute_pi(g, tuple(demands))


def test_pi_t_examples():
    p3 = path_graph(3)
    assert pi_t(p3, 2) == 8
    tp = two_path([1])
    assert pi_t(tp.graph, 2) == two_path_pi_t(4, 2, 2) == 8


def test_pi_t_growth_in_t():
    rng = random.Random(911)
    for trial in range(6):
        n = rng.randrange(4, 7)
        g = build_graph(n, random_connected_edges(n, n, rng))
        diam = metrics(g).diameter
        values = [pi_t(g, t) for t in (1, 2, 3)]
        assert values[0] < values[1] < values[2]
        assert values[1] <= values[0] + (1 << diam)
        assert values[2] <= values[1] + (1 << diam)


def test_tree_dust_witness_is_tight():
    for seed in range(6):
        tree = random_tree(4 + seed % 4, 7000 + seed)
        for t in (1, 2):
            part = max_path_partition(tree)
            dust = tree_dust_witness(tree, t)
            assert dust.size == tree_pi(part, t) - 1
            d = Distribution.stacked(tree.graph.n, tree.root, t)
            assert not is_solvable(tree.graph, dust, d).solvable


def test_two_path_lower_candidates_are_unsolvable():
    for k, t in (([1], 1), ([2], 2), ([2, 1], 1), ([3], 2)):
        tp = two_path(k)
        n, d = tp.graph.n, tp.d
        for r, cfg in two_path_lower_candidates(tp, t):
            assert cfg.size == two_path_pi_t(n, d, t) - 1
            stacked = Distribution.stacked(n, r, t)
            assert not is_solvable(tp.graph, cfg, stacked).solvable


def test_check_pi_t_equals_pass_and_fail_paths():
    p3 = path_graph(3)
    ok = check_pi_t_equals(p3, 1, 4)
    assert ok["pass"] and ok["reason"] is None
    lower = ok["lower_witness"]
    assert lower["witness"].size == 3
    assert not is_solvable(
        p3, lower["witness"],
        Distribution.stacked(3, lower["root"], 1)).solvable

    low = check_pi_t_equals(p3, 1, 3)
    assert not low["pass"]
    assert low["reason"] == "unsolvable configuration at the expected size"
    assert low["counterexample"]["config"].size == 3

    high = check_pi_t_equals(p3, 1, 5)
    assert not high["pass"]
    assert high["reason"] == "no unsolvable configuration one below the expected size"
    assert high["counterexample"] is None

    with pytest.raises(PebblingError):
        check_pi_t_equals(p3, 0, 4)


def test_check_pi_t_equals_accepts_constructed_candidates():
    tp = two_path([2, 1])
    n, d = tp.graph.n, tp.d
    expected = two_path_pi_t(n, d, 2)
    got = check_pi_t_equals(tp.graph, 2, expected,
                            lower_candidates=two_path_lower_candidates(tp, 2))
    assert got["pass"] and got["lower_witness"]["source"] == "constructed"


def test_demands_of_size_counts():
    g = path_graph(4)
    for t in (1, 2, 3):
        ds = demands_of_size(g, t)
        assert len(ds) == comb(4 + t - 1, t)
        assert all(d.size == t for d in ds)
        assert len({d.demands for d in ds}) == len(ds)


def test_verify_target_conjecture_on_a_star():
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    report = verify_target_conjecture(star, 2)
    assert report["pass"] and report["pi_t"] == 9
    assert report["demand_count"] == comb(5, 2)
    assert report["counterexample"] is None


def test_verify_target_conjecture_with_expected_value():
    tp = two_path([1])
    report = verify_target_conjecture(
        tp.graph, 2, expected_pi=8,
        lower_candidates=two_path_lower_candidates(tp, 2))
    assert report["pass"] and report["pi_t"] == 8
    assert report["demand_count"] == 10
    assert report["lower_witness"] is not None

    too_high = verify_target_conjecture(tp.graph, 2, expected_pi=9)
    assert not too_high["pass"]
    assert "reason" in too_high["counterexample"]

    too_low = verify_target_conjecture(
        tp.graph, 2, expected_pi=7,
        lower_candidates=[(0, Configuration((0, 6, 0, 0)))])
    assert not too_low["pass"]
    assert too_low["counterexample"]["config"].size == 7

    with pytest.raises(PebblingError):
        verify_target_conjecture(tp.graph, 2, demand_classes=[(1, 0, 0, 0)])


def test_budget_is_enforced_and_reported(petersen):
    d = Distribution.stacked(10, 0, 1)
    with pytest.raises(BudgetExceededError) as info:
        find_unsolvable_witness(petersen, d, 10, budget=100)
    err = info.value
    assert err.cap == 100 and err.spent > 100
    assert "budget of 100 configuration checks exceeded" in str(err)


def test_budget_environment_default(petersen, monkeypatch):
    monkeypatch.setenv("PEBBLEKIT_BUDGET", "50")
    with pytest.raises(BudgetExceededError) as info:
        pi_D(petersen, Distribution.stacked(10, 0, 1))
    assert info.value.cap == 50


def test_rooted_tree_rejects_non_trees():
    tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(FamilyError):
        RootedTree(tri, 0)
    with pytest.raises(FamilyError):
        RootedTree(path_graph(3), 5)
