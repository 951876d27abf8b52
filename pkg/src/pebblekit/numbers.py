"""Exact pebbling numbers pi(G, D), pi_t(G, r), pi_t(G) by exhaustive
configuration enumeration, plus unsolvable-witness search.

Enumeration scans ascend in lexicographic order so the first witness found
is the lexicographically least one; the public enumerate_configs stream is
the conventional descending order starting at (m, 0, ..., 0). Vectorized
spanning-tree delivery gives a sound fast-accept prescreen (exact on
trees); every verdict that matters is confirmed by the exact engine.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import chain, combinations, combinations_with_replacement, islice
from math import comb

import numpy as np

from .engine import Configuration, Distribution, PebblingError, is_solvable
from .families import RootedTree, TwoPath, max_path_partition
from .formulas import build_C_t1, build_C_t2, tree_pi
from .graph import Graph, automorphisms, build_graph

__all__ = [
    "BudgetExceededError",
    "WitnessResult",
    "DEFAULT_BUDGET",
    "num_configs",
    "enumerate_configs",
    "unrank_config",
    "find_unsolvable_witness",
    "multi_demand_scan",
    "pi_D",
    "pi_t",
    "check_pi_t_equals",
    "verify_target_conjecture",
    "demands_of_size",
    "tree_dust_witness",
    "two_path_lower_candidates",
]

DEFAULT_BUDGET = 10 ** 8
_BLOCK = 1 << 16


class BudgetExceededError(RuntimeError):
    """Raised when a search exceeds its configuration-check budget."""

    def __init__(self, cap: int, spent: int):
        super().__init__(f"budget of {cap} configuration checks exceeded "
                         f"(attempted {spent})")
        self.cap = cap
        self.spent = spent


class _Budget:
    __slots__ = ("cap", "spent")

    def __init__(self, cap: int):
        self.cap = cap
        self.spent = 0

    def charge(self, k: int):
        self.spent += k
        if self.spent > self.cap:
            raise BudgetExceededError(self.cap, self.spent)

    def require(self, k: int):
        if self.spent + k > self.cap:
            raise BudgetExceededError(self.cap, self.spent + k)


def _coerce_budget(budget) -> _Budget:
    if isinstance(budget, _Budget):
        return budget
    if budget is None:
        budget = int(os.environ.get("PEBBLEKIT_BUDGET", DEFAULT_BUDGET))
    return _Budget(int(budget))


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of one fixed-size witness scan. witness is the
    lexicographically least unsolvable configuration, when one exists;
    witnesses holds all of them when the scan collected exhaustively."""

    size: int
    witness: Configuration | None
    configs_checked: int
    witnesses: tuple = ()

    @property
    def found(self) -> bool:
        return self.witness is not None


def num_configs(n: int, m: int) -> int:
    """Number of pebble configurations of size m on n vertices."""
    return comb(n + m - 1, n - 1)


def enumerate_configs(n: int, m: int):
    """All weak compositions of m into n parts, lexicographically descending
    from (m, 0, ..., 0)."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if m < 0:
        raise ValueError("pebble count must be nonnegative")
    a = [0] * n
    a[0] = m
    while True:
        yield Configuration(tuple(a))
        j = next((i for i in range(n - 2, -1, -1) if a[i] > 0), None)
        if j is None:
            return
        tail = sum(a[j + 1:])
        a[j] -= 1
        a[j + 1] = tail + 1
        for i in range(j + 2, n):
            a[i] = 0


def unrank_config(n: int, m: int, rank: int) -> Configuration:
    """Configuration at the given rank in the ascending lexicographic order
    used by the internal scans (rank 0 is (0, ..., 0, m))."""
    if not (0 <= rank < num_configs(n, m)):
        raise ValueError(f"rank {rank} out of range for ({n}, {m})")
    counts = []
    for slot in range(n - 1):
        parts = n - slot - 1
        v = 0
        while True:
            block = comb(m - v + parts - 1, parts - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        counts.append(v)
        m -= v
    counts.append(m)
    return Configuration(tuple(counts))


def _ascending_blocks(n: int, m: int, start: int = 0, stop: int | None = None,
                      block: int = _BLOCK):
    """Consecutive ascending-lex configurations as (B, n) int64 arrays,
    via the stars-and-bars bijection with lexicographic combinations."""
    total = num_configs(n, m)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if n == 1:
        yield np.array([[m]], dtype=np.int64)
        return
    it = islice(combinations(range(m + n - 1), n - 1), start, stop)
    while True:
        flat = np.fromiter(chain.from_iterable(islice(it, block)),
                           dtype=np.int64)
        if flat.size == 0:
            return
        bars = flat.reshape(-1, n - 1)
        rows = np.empty((bars.shape[0], n), dtype=np.int64)
        rows[:, 0] = bars[:, 0]
        if n > 2:
            rows[:, 1:-1] = bars[:, 1:] - bars[:, :-1] - 1
        rows[:, -1] = (m + n - 2) - bars[:, -1]
        yield rows


def _bfs_parents(g: Graph, r: int, descending: bool = False) -> list:
    par = [-1] * g.n
    seen = [False] * g.n
    seen[r] = True
    frontier = [r]
    while frontier:
        nxt = []
        for u in frontier:
            nbrs = sorted(g.adjacency[u], reverse=descending)
            for v in nbrs:
                if not seen[v]:
                    seen[v] = True
                    par[v] = u
                    nxt.append(v)
        frontier = nxt
    return par


def _tree_variants(g: Graph, r: int):
    """Spanning-tree (processing order, parent array) pairs used by the
    vectorized delivery prescreen. BFS trees preserve distances, so any
    amount deliverable to r inside one is deliverable in g."""
    dist = g.metrics.dist[r]
    order = sorted((v for v in range(g.n) if v != r),
                   key=lambda v: (-dist[v], v))
    variants = []
    for desc in (False, True):
        par = _bfs_parents(g, r, descending=desc)
        variants.append((tuple(order), tuple(par)))
        if g.n <= 2:
            break
    return variants


def _deliver(rows: np.ndarray, order, par, target: int) -> np.ndarray:
    """Max pebbles deliverable to target moving only along the given
    spanning tree: children flush floor(count/2) to their parent, deepest
    first. Exact on trees; a lower bound on any graph containing the tree."""
    a = rows.copy()
    for v in order:
        a[:, par[v]] += a[:, v] >> 1
    return a[:, target]


class _FastFilter:
    """Sound fast-accept masks for one demand: rows flagged True are
    provably solvable; the exact engine decides the rest."""

    def __init__(self, g: Graph, d: Distribution):
        self.g = g
        self.d = d
        self.targets = d.support
        self.demands = d.demands
        self.variants = {r: _tree_variants(g, r) for r in self.targets}
        if len(self.targets) == 2:
            a, b = self.targets
            self.pair_dist = g.metrics.dist[a][b]

    def accept(self, rows: np.ndarray, cache: dict | None = None) -> np.ndarray:
        """The optional cache shares delivered columns for the same block
        across filters whose demands hit the same target."""
        B = rows.shape[0]
        ts = self.targets
        if len(ts) == 0:
            return np.ones(B, dtype=bool)
        if cache is None:
            cache = {}

        def delivered(r: int, vi: int) -> np.ndarray:
            col = cache.get((r, vi))
            if col is None:
                order, par = self.variants[r][vi]
                col = _deliver(rows, order, par, r)
                cache[(r, vi)] = col
            return col

        if len(ts) == 1:
            r = ts[0]
            need = self.demands[r]
            solv = np.zeros(B, dtype=bool)
            for vi in range(len(self.variants[r])):
                solv |= delivered(r, vi) >= need
            return solv
        if len(ts) == 2:
            a, b = ts
            da, db = self.demands[a], self.demands[b]
            shift = self.pair_dist
            solv = (rows[:, a] >= da) & (rows[:, b] >= db)
            # deliver everything to one target, then route the rest across
            for vi in range(len(self.variants[a])):
                solv |= delivered(a, vi) >= da + (db << shift)
                solv |= delivered(b, vi) >= db + (da << shift)
            # pay one target from pebbles already in place, deliver the other
            # from what remains (only rows not yet accepted)
            for keep, pay, amt, need in ((b, a, da, db), (a, b, db, da)):
                todo = np.flatnonzero((rows[:, pay] >= amt) & ~solv)
                if todo.size == 0:
                    continue
                tmp = rows[todo].copy()
                tmp[:, pay] -= amt
                sub = np.zeros(todo.size, dtype=bool)
                for order, par in self.variants[keep]:
                    sub |= _deliver(tmp, order, par, keep) >= need
                solv[todo[sub]] = True
            # cut one target out of the other's tree: the cut vertex keeps
            # what its subtree flushes into it, the rest reaches the root;
            # the two deliveries use disjoint vertex sets
            for root, cut, need_r, need_c in ((a, b, da, db), (b, a, db, da)):
                for order, par in self.variants[root]:
                    todo = np.flatnonzero(~solv)
                    if todo.size == 0:
                        break
                    tmp = rows[todo].copy()
                    for v in order:
                        if v != cut:
                            tmp[:, par[v]] += tmp[:, v] >> 1
                    hit = (tmp[:, root] >= need_r) & (tmp[:, cut] >= need_c)
                    solv[todo[hit]] = True
            return solv
        ok = np.ones(B, dtype=bool)
        for r in ts:
            ok &= rows[:, r] >= self.demands[r]
        return ok


def _lex_le_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-row lexicographic a <= b for equal-shaped integer arrays."""
    neq = a != b
    any_neq = neq.any(axis=1)
    first = np.where(any_neq, neq.argmax(axis=1), 0)
    idx = np.arange(a.shape[0])
    lt = a[idx, first] < b[idx, first]
    return np.where(any_neq, lt, True)


def _canonical_mask(rows: np.ndarray, perms) -> np.ndarray:
    """Keep rows that are lexicographic minima of their orbit under the
    given column permutations."""
    keep = np.ones(rows.shape[0], dtype=bool)
    for p in perms:
        keep &= _lex_le_rows(rows, rows[:, p])
    return keep


def _demand_stabilizer(g: Graph, demands) -> list:
    """Nontrivial automorphisms preserving every demand vector: solvability
    is invariant under them, so scanning orbit minima suffices."""
    vecs = [d.demands for d in demands]
    perms = []
    for p in automorphisms(g):
        if all(p[i] == i for i in range(g.n)):
            continue
        if all(v[p[i]] == v[i] for v in vecs for i in range(g.n)):
            perms.append(np.array(p, dtype=np.intp))
    return perms


def _scan_chunk(g: Graph, demands, size: int, start: int, stop: int, *,
                mode: str = "unrestricted", collect_all: bool = False,
                perms=(), budget: _Budget | None = None):
    """Scan one contiguous ascending-lex range. Returns
    (first_failure, witnesses, checked) where first_failure is
    (demand_index, Configuration) or None. With collect_all (single demand
    only) the scan continues past failures and gathers every witness."""
    n = g.n
    use_filters = mode == "unrestricted"
    filters = [_FastFilter(g, d) for d in demands] if use_filters else None
    checked = 0
    witnesses = []
    first = None
    for rows in _ascending_blocks(n, size, start, stop):
        if len(perms):
            rows = rows[_canonical_mask(rows, perms)]
            if rows.shape[0] == 0:
                continue
        if budget is not None:
            budget.charge(rows.shape[0])
        checked += rows.shape[0]
        cache: dict = {}
        for di, d in enumerate(demands):
            if use_filters:
                pending = np.flatnonzero(~filters[di].accept(rows, cache))
            else:
                pending = range(rows.shape[0])
            for i in pending:
                cfg = Configuration(tuple(rows[i].tolist()))
                if is_solvable(g, cfg, d, mode).solvable:
                    continue
                if first is None:
                    first = (di, cfg)
                if collect_all:
                    witnesses.append(cfg)
                else:
                    return first, witnesses, checked
    return first, witnesses, checked


def _scan_worker(payload):
    (g, demand_vecs, size, start, stop, mode, collect_all, symmetry) = payload
    demands = [Distribution(v) for v in demand_vecs]
    perms = _demand_stabilizer(g, demands) if symmetry else ()
    return _scan_chunk(g, demands, size, start, stop, mode=mode,
                       collect_all=collect_all, perms=perms, budget=None)


def _scan(g: Graph, demands, size: int, *, mode: str = "unrestricted",
          collect_all: bool = False, jobs: int = 1, symmetry: bool = False,
          budget=None):
    """Full fixed-size scan, optionally split into contiguous chunks
    processed in parallel and merged in order (the reported witness is
    identical to the serial one)."""
    budget = _coerce_budget(budget)
    total = num_configs(g.n, size)
    if jobs <= 1 or total < 4 * _BLOCK:
        perms = _demand_stabilizer(g, demands) if symmetry else ()
        return _scan_chunk(g, demands, size, 0, total, mode=mode,
                           collect_all=collect_all, perms=perms,
                           budget=budget)
    budget.require(total)
    chunk = -(-total // jobs)
    vecs = [d.demands for d in demands]
    payloads = [(g, vecs, size, i * chunk, min((i + 1) * chunk, total),
                 mode, collect_all, symmetry) for i in range(jobs)]
    first = None
    witnesses = []
    checked = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for cfirst, cwits, cchecked in pool.map(_scan_worker, payloads):
            checked += cchecked
            witnesses.extend(cwits)
            if first is None and cfirst is not None:
                first = cfirst
    budget.charge(checked)
    return first, witnesses, checked


def find_unsolvable_witness(g: Graph, d: Distribution, size: int, *,
                            mode: str = "unrestricted",
                            collect_all: bool = False, jobs: int = 1,
                            symmetry: bool = False,
                            budget=None) -> WitnessResult:
    """Scan every configuration of the given size (ascending lex; optionally
    orbit minima only when symmetry reduction is on) and report the first
    D-unsolvable one. Every reported witness carries an exact engine
    verdict, never just a prescreen rejection."""
    if size < 0:
        raise ValueError("size must be nonnegative")
    first, wits, checked = _scan(g, [d], size, mode=mode,
                                 collect_all=collect_all, jobs=jobs,
                                 symmetry=symmetry, budget=budget)
    witness = first[1] if first is not None else None
    return WitnessResult(size=size, witness=witness, configs_checked=checked,
                         witnesses=tuple(wits))


def multi_demand_scan(g: Graph, demands, size: int, *, mode: str = "unrestricted",
                      jobs: int = 1, symmetry: bool = False,
                      budget=None) -> dict:
    """One pass over all size-m configurations checking several demands at
    once. Stops at the first configuration unsolvable for any demand."""
    first, _, checked = _scan(g, list(demands), size, mode=mode, jobs=jobs,
                              symmetry=symmetry, budget=budget)
    failure = None
    if first is not None:
        failure = {"demand_index": first[0], "config": first[1]}
    return {"failure": failure, "configs_checked": checked}


def pi_D(g: Graph, d: Distribution, hint: int | None = None, *,
         budget=None, jobs: int = 1, symmetry: bool = False,
         mode: str = "unrestricted") -> int:
    """Smallest m such that every size-m configuration is D-solvable.

    Solvability is monotone in the configuration (extra pebbles never
    hurt), so "some size-s configuration is unsolvable" is a monotone
    predicate in s; the answer is found by probing it. A correct hint costs
    two scans (none at hint, a witness at hint-1); wrong hints only move
    the bracket, never the answer.
    """
    if d.size < 1:
        raise PebblingError("demand must have size at least 1")
    budget = _coerce_budget(budget)
    cache: dict[int, bool] = {0: True}  # the empty configuration fails |d| >= 1

    def has_witness(s: int) -> bool:
        if s not in cache:
            res = find_unsolvable_witness(g, d, s, jobs=jobs,
                                          symmetry=symmetry, budget=budget,
                                          mode=mode)
            cache[s] = res.found
        return cache[s]

    lo, hi = 0, None  # witness exists at lo; none at hi
    if hint is not None and hint >= 1:
        if has_witness(hint):
            lo = hint
        else:
            hi = hint
            if hint >= 2 and has_witness(hint - 1):
                lo = hint - 1
    if hi is None:
        probe = max(lo + 1, d.size)
        while has_witness(probe):
            lo = probe
            probe *= 2
        hi = probe
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if has_witness(mid):
            lo = mid
        else:
            hi = mid
    return hi


def _bfs_rooted_tree(g: Graph, r: int) -> RootedTree:
    par = _bfs_parents(g, r)
    edges = [(v, par[v]) for v in range(g.n) if par[v] >= 0]
    return RootedTree(build_graph(g.n, edges), r)


def _tree_hint(g: Graph, r: int, t: int) -> int:
    """Upper bound on pi_t(g, r) from a BFS spanning tree: every tree move
    is a graph move, so the tree's t-fold rooted pebbling number bounds the
    graph's from above."""
    if g.n == 1:
        return t
    tree = _bfs_rooted_tree(g, r)
    return tree_pi(max_path_partition(tree), t)


def _root_list(g: Graph, roots) -> list:
    if roots is None:
        return list(range(g.n))
    if isinstance(roots, int):
        return [roots]
    return list(roots)


def pi_t(g: Graph, t: int = 1, roots=None, *, budget=None, jobs: int = 1,
         symmetry: bool = False, hints=None) -> int:
    """t-fold pebbling number: max over the requested roots (all by
    default; pass a single root for vertex-transitive graphs) of the
    smallest m making every size-m configuration t-fold r-solvable."""
    if t < 1:
        raise PebblingError("t must be at least 1")
    budget = _coerce_budget(budget)
    best = 0
    for r in _root_list(g, roots):
        if hints is None:
            h = _tree_hint(g, r, t)
        elif isinstance(hints, dict):
            h = hints.get(r, _tree_hint(g, r, t))
        else:
            h = int(hints)
        d = Distribution.stacked(g.n, r, t)
        best = max(best, pi_D(g, d, h, budget=budget, jobs=jobs,
                              symmetry=symmetry))
    return best


def _peel_paths(tree: RootedTree):
    """Vertex paths of a maximum root-path partition: repeatedly peel the
    deepest descending path (ties to the least index). Path 0 starts at the
    root; later paths start at their attachment vertex."""
    g = tree.graph
    children = tree.children
    height = [0] * g.n
    order = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(children[v])
    for v in reversed(order):
        for c in children[v]:
            height[v] = max(height[v], height[c] + 1)
    paths = []

    def walk(attach, top):
        path = [] if attach is None else [attach]
        v = top
        while True:
            path.append(v)
            kids = children[v]
            if not kids:
                break
            v = min(kids, key=lambda c: (-height[c], c))
        paths.append(path)
        new = path if attach is None else path[1:]
        on_path = set(path)
        for u in new:
            for c in children[u]:
                if c not in on_path:
                    walk(u, c)

    walk(None, tree.root)
    return paths


def tree_dust_witness(tree: RootedTree, t: int = 1) -> Configuration:
    """The standard unsolvable configuration one pebble short of the tree's
    t-fold rooted pebbling number: 2^(path length) - 1 pebbles at the far
    end of each partition path, t-scaled on the longest."""
    paths = _peel_paths(tree)
    counts = [0] * tree.graph.n
    for idx, path in enumerate(paths):
        length = len(path) - 1
        amount = (1 << length) - 1
        if idx == 0:
            amount = t * (1 << length) - 1
        counts[path[-1]] += amount
    return Configuration(tuple(counts))


def two_path_lower_candidates(tp: TwoPath, t: int = 1):
    """Candidate unsolvable configurations of size pi_t - 1 for a 2-path,
    rooted at a simplicial spine end: the opposite end carries t*2^d - 1
    pebbles; the root, the spine interior, and one interior vertex per fan
    are empty; all other vertices carry one pebble. Candidates whose zero
    pattern collapses (shared fan vertices) are dropped by the size check;
    callers confirm every candidate with the exact engine."""
    g = tp.graph
    spine = tp.spine
    d = tp.d
    n = g.n
    want = t * (1 << d) + n - 2 * d - 1
    out = []
    seen = set()
    for r, far in ((spine[0], spine[-1]), (spine[-1], spine[0])):
        for pick_near in (True, False):
            zeros = {r} | set(spine[1:-1])
            for interior in tp.interiors:
                q = interior if r == spine[0] else tuple(reversed(interior))
                zeros.add(q[0] if pick_near else q[-1])
            counts = [0 if v in zeros else 1 for v in range(n)]
            counts[far] = t * (1 << d) - 1
            cfg = Configuration(tuple(counts))
            if cfg.size == want and cfg.counts not in seen:
                seen.add(cfg.counts)
                out.append((r, cfg))
    return out


def _default_lower_candidates(g: Graph, t: int, roots, want_size: int):
    cands = []
    diam = g.metrics.diameter
    for r in roots:
        if g.n == 1:
            if want_size >= 0:
                cands.append((r, Configuration((want_size,))))
            continue
        cands.append((r, tree_dust_witness(_bfs_rooted_tree(g, r), t)))
        if diam == 2 and g.metrics.ecc[r] == 2:
            cands.append((r, build_C_t1(g, r, t)))
            cands.append((r, build_C_t2(g, r, t)))
    return [(r, c) for r, c in cands if c.size == want_size]


def _confirm_lower(g: Graph, t: int, roots, want_size: int, candidates,
                   budget: _Budget, jobs: int, symmetry: bool):
    """Certify pi_t(g) > want_size by exhibiting one engine-confirmed
    unsolvable configuration: constructed candidates first, full scan as a
    fallback."""
    for r, cfg in candidates:
        if cfg.size != want_size:
            continue
        budget.charge(1)
        d = Distribution.stacked(g.n, r, t)
        if not is_solvable(g, cfg, d).solvable:
            return {"root": r, "witness": cfg, "source": "constructed"}
    for r in roots:
        d = Distribution.stacked(g.n, r, t)
        res = find_unsolvable_witness(g, d, want_size, jobs=jobs,
                                      symmetry=symmetry, budget=budget)
        if res.found:
            return {"root": r, "witness": res.witness, "source": "scan"}
    return None


def check_pi_t_equals(g: Graph, t: int, expected: int, *, roots=None,
                      lower_candidates=None, budget=None, jobs: int = 1,
                      symmetry: bool = False) -> dict:
    """Prove pi_t(g) == expected with one combined scan: no root has an
    unsolvable configuration at size expected (upper bound), and some root
    has one at expected - 1 (lower bound, constructed witness when
    possible)."""
    if t < 1:
        raise PebblingError("t must be at least 1")
    budget = _coerce_budget(budget)
    root_list = _root_list(g, roots)
    demands = [Distribution.stacked(g.n, r, t) for r in root_list]
    scan = multi_demand_scan(g, demands, expected, jobs=jobs,
                             symmetry=symmetry, budget=budget)
    if scan["failure"] is not None:
        fail = scan["failure"]
        return {
            "expected": expected,
            "pass": False,
            "reason": "unsolvable configuration at the expected size",
            "counterexample": {"root": root_list[fail["demand_index"]],
                               "config": fail["config"]},
            "lower_witness": None,
            "configs_checked": budget.spent,
        }
    candidates = list(lower_candidates or [])
    candidates += _default_lower_candidates(g, t, root_list, expected - 1)
    lower = None
    if expected >= 1:
        lower = _confirm_lower(g, t, root_list, expected - 1, candidates,
                               budget, jobs, symmetry)
        if lower is None:
            return {
                "expected": expected,
                "pass": False,
                "reason": "no unsolvable configuration one below the expected size",
                "counterexample": None,
                "lower_witness": None,
                "configs_checked": budget.spent,
            }
    return {
        "expected": expected,
        "pass": True,
        "reason": None,
        "counterexample": None,
        "lower_witness": lower,
        "configs_checked": budget.spent,
    }


def demands_of_size(g: Graph, t: int):
    """Every demand multiset of total size t as a Distribution, in
    lexicographic vertex-multiset order."""
    out = []
    for combo in combinations_with_replacement(range(g.n), t):
        vec = [0] * g.n
        for v in combo:
            vec[v] += 1
        out.append(Distribution(tuple(vec)))
    return out


def verify_target_conjecture(g: Graph, t: int = 1, demand_classes=None, *,
                             expected_pi: int | None = None, roots=None,
                             lower_candidates=None, budget=None,
                             jobs: int = 1, symmetry: bool = False) -> dict:
    """Check pi(G, D) <= pi_t(G) for every demand D of size t in the
    requested classes (all multisets by default).

    With expected_pi given, one combined scan at that size over the demand
    classes plus all stacked demands, together with a lower witness at
    expected_pi - 1, certifies pi_t(G) = expected_pi and the conjecture in
    a single pass. Otherwise pi_t is computed first and only the
    non-stacked classes are rescanned.
    """
    if t < 1:
        raise PebblingError("t must be at least 1")
    budget = _coerce_budget(budget)
    root_list = _root_list(g, roots)
    if demand_classes is None:
        classes = demands_of_size(g, t)
    else:
        classes = [d if isinstance(d, Distribution) else Distribution(tuple(d))
                   for d in demand_classes]
    for d in classes:
        if d.size != t:
            raise PebblingError(f"demand {d.demands} has size {d.size}, expected {t}")

    report = {"t": t, "pi_t": None, "pass": False, "counterexample": None,
              "lower_witness": None, "demand_count": len(classes),
              "configs_checked": 0}

    if expected_pi is None:
        M = pi_t(g, t, roots=root_list, budget=budget, jobs=jobs,
                 symmetry=symmetry)
        covered = set(root_list)
        scan_demands = [d for d in classes
                        if not (len(d.support) == 1 and d.support[0] in covered)]
        lower = None
    else:
        M = expected_pi
        stacked = [Distribution.stacked(g.n, r, t) for r in root_list]
        seen = {d.demands for d in classes}
        scan_demands = list(classes)
        scan_demands += [d for d in stacked if d.demands not in seen]
        candidates = list(lower_candidates or [])
        candidates += _default_lower_candidates(g, t, root_list, M - 1)
        lower = _confirm_lower(g, t, root_list, M - 1, candidates, budget,
                               jobs, symmetry)
        if lower is None:
            report.update(pi_t=M, configs_checked=budget.spent)
            report["counterexample"] = {
                "reason": "no unsolvable configuration at size pi_t - 1"}
            return report
        report["lower_witness"] = lower

    report["pi_t"] = M
    if scan_demands:
        scan = multi_demand_scan(g, scan_demands, M, jobs=jobs,
                                 symmetry=symmetry, budget=budget)
        if scan["failure"] is not None:
            fail = scan["failure"]
            report["counterexample"] = {
                "demand": list(scan_demands[fail["demand_index"]].demands),
                "config": fail["config"],
            }
            report["configs_checked"] = budget.spent
            return report
    report["pass"] = True
    report["configs_checked"] = budget.spent
    return report
