"""Shared fixtures: small graph pools, the seeded engine property suites
(run once per session), and the acceptance-line printer."""

import random
import sys

import pytest

from pebblekit import (
    Configuration,
    Distribution,
    apply_move,
    build_graph,
    is_solvable,
    kneser,
    max_path_partition,
    random_tree,
    replay,
    stats,
    tree_pi,
    weight,
)
from pebblekit.families import RootedTree

from oracles import random_config, random_connected_edges

PROPERTY_TARGET = 10_000


@pytest.fixture(scope="session")
def petersen():
    return kneser(5, 2)


@pytest.fixture
def criterion_line(capfd):
    """Prints one PASS/FAIL line per acceptance criterion, past capture."""

    def emit(num: int, ok: bool, text: str):
        status = "PASS" if ok else "FAIL"
        with capfd.disabled():
            sys.stdout.write(f"criterion {num:2d}: {status} - {text}\n")
            sys.stdout.flush()
        assert ok, f"criterion {num} failed: {text}"

    return emit


def _graph_pool(rng, count=40, lo=3, hi=8):
    pool = []
    while len(pool) < count:
        n = rng.randrange(lo, hi + 1)
        extra = rng.randrange(0, n)
        pool.append(build_graph(n, random_connected_edges(n, extra, rng)))
    return pool


def _random_demand(n, size, rng):
    vec = [0] * n
    for _ in range(size):
        vec[rng.randrange(n)] += 1
    return Distribution(tuple(vec))


def _suite_solvability_monotonicity(count):
    # adding a pebble anywhere never turns a solvable instance unsolvable
    rng = random.Random(101)
    pool = _graph_pool(rng)
    failures = []
    for i in range(count):
        g = pool[i % len(pool)]
        c = random_config(g.n, rng.randrange(0, 13), rng)
        d = _random_demand(g.n, rng.randrange(1, 4), rng)
        before = is_solvable(g, Configuration(c), d).solvable
        bumped = list(c)
        bumped[rng.randrange(g.n)] += 1
        after = is_solvable(g, Configuration(tuple(bumped)), d).solvable
        if before and not after:
            failures.append({"edges": g.edges, "config": c,
                             "demand": d.demands})
    return {"instances": count, "failures": failures}


def _suite_weight_monotonicity(count):
    # no legal move increases weight toward any vertex
    rng = random.Random(202)
    pool = _graph_pool(rng)
    failures = []
    for i in range(count):
        g = pool[i % len(pool)]
        counts = list(random_config(g.n, rng.randrange(0, 10), rng))
        u = rng.randrange(g.n)
        counts[u] += 2
        v = rng.choice(list(g.adjacency[u]))
        c = Configuration(tuple(counts))
        moved = apply_move(c, u, v, g)
        for r in range(g.n):
            if weight(moved, r, g) > weight(c, r, g):
                failures.append({"edges": g.edges, "config": tuple(counts),
                                 "move": (u, v), "vertex": r})
                break
    return {"instances": count, "failures": failures}


def _suite_potential_bounds(count):
    # part 1: pot(C) >= ceil((|C| - |V| + z(C)) / 2)
    # part 2: a solvable demand supported outside supp(C) needs pot >= |D|
    rng = random.Random(303)
    pool = _graph_pool(rng)
    failures = []
    for i in range(count):
        g = pool[i % len(pool)]
        c = random_config(g.n, rng.randrange(0, 14), rng)
        st = stats(Configuration(c))
        slack = sum(c) - g.n + st["zeros"]
        if st["potential"] < -(-slack // 2):
            failures.append({"part": 1, "edges": g.edges, "config": c})
            continue
        empty = [v for v in range(g.n) if c[v] == 0]
        if not empty:
            continue
        vec = [0] * g.n
        for _ in range(rng.randrange(1, 3)):
            vec[rng.choice(empty)] += 1
        d = Distribution(tuple(vec))
        out = is_solvable(g, Configuration(c), d)
        if out.solvable and st["potential"] < d.size:
            failures.append({"part": 2, "edges": g.edges, "config": c,
                             "demand": d.demands})
    return {"instances": count, "failures": failures}


def _suite_greedy_trees(count):
    # on trees, greedy search succeeds whenever unrestricted does, and
    # always succeeds once |c| reaches the rooted pebbling number
    rng = random.Random(404)
    trees = [random_tree(3 + i % 6, 9000 + i) for i in range(80)]
    failures = []
    for i in range(count):
        g = trees[i % len(trees)].graph
        r = rng.randrange(g.n)
        pi1 = tree_pi(max_path_partition(RootedTree(g, r)), 1)
        size = max(0, pi1 + rng.randrange(-2, 3))
        c = Configuration(random_config(g.n, size, rng))
        d = Distribution.stacked(g.n, r, 1)
        free = is_solvable(g, c, d).solvable
        greedy = is_solvable(g, c, d, mode="greedy").solvable
        if (free and not greedy) or (size >= pi1 and not greedy):
            failures.append({"edges": g.edges, "root": r,
                             "config": c.counts, "size": size, "pi": pi1})
    return {"instances": count, "failures": failures}


def _suite_replay_validity(count):
    # returned solutions replay legally, meet the demand, and book their
    # cost as moves + 1 exactly when the demand sits on a single vertex
    rng = random.Random(505)
    pool = _graph_pool(rng)
    failures = []
    for i in range(count):
        g = pool[i % len(pool)]
        c = Configuration(random_config(g.n, rng.randrange(0, 12), rng))
        d = _random_demand(g.n, rng.randrange(1, 3), rng)
        out = is_solvable(g, c, d)
        record = {"edges": g.edges, "config": c.counts, "demand": d.demands}
        if not out.solvable:
            if out.solution is not None:
                failures.append(record | {"why": "solution on unsolvable"})
            continue
        try:
            final = replay(g, c, out.solution.moves)
        except Exception as exc:
            failures.append(record | {"why": f"illegal replay: {exc}"})
            continue
        if any(final.counts[v] < d.demands[v] for v in range(g.n)):
            failures.append(record | {"why": "demand unmet after replay"})
            continue
        cost = out.solution.cost
        single = d.size == 1
        if single != (cost is not None):
            failures.append(record | {"why": "cost defined on wrong arity"})
        elif cost is not None and cost != len(out.solution.moves) + 1:
            failures.append(record | {"why": "cost is not moves + 1"})
    return {"instances": count, "failures": failures}


@pytest.fixture(scope="session")
def property_suites():
    return {
        "solvability_monotonicity":
            _suite_solvability_monotonicity(PROPERTY_TARGET),
        "weight_monotonicity": _suite_weight_monotonicity(PROPERTY_TARGET),
        "potential_bounds": _suite_potential_bounds(PROPERTY_TARGET),
        "greedy_trees": _suite_greedy_trees(PROPERTY_TARGET),
        "replay_validity": _suite_replay_validity(PROPERTY_TARGET),
    }
