"""Exact pebbling engine: configurations, distributions, pebbling moves,
solvability search with pruning, minimum-cost solutions, slides, and
weight/potential statistics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graph import Graph

__all__ = [
    "PebblingError",
    "Configuration",
    "Distribution",
    "Solution",
    "SolveOutcome",
    "Solver",
    "MODES",
    "apply_move",
    "replay",
    "stats",
    "weight",
    "is_solvable",
    "min_cost_solution",
    "find_slides",
    "max_fold",
]

MODES = ("unrestricted", "greedy", "semi_greedy")


class PebblingError(ValueError):
    """Invalid pebbling operation or malformed input."""


def _as_counts(values, name: str) -> tuple[int, ...]:
    counts = tuple(int(x) for x in values)
    if any(x < 0 for x in counts):
        raise PebblingError(f"{name} must be nonnegative")
    return counts


@dataclass(frozen=True)
class Configuration:
    """Pebble supply: nonnegative count per vertex."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", _as_counts(self.counts, "pebble counts"))

    @cached_property
    def size(self) -> int:
        return sum(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def __len__(self) -> int:
        return len(self.counts)

    def add(self, v: int, k: int = 1) -> "Configuration":
        counts = list(self.counts)
        counts[v] += k
        return Configuration(tuple(counts))


@dataclass(frozen=True)
class Distribution:
    """Pebble demand: nonnegative target count per vertex."""

    demands: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "demands", _as_counts(self.demands, "demands"))

    @cached_property
    def size(self) -> int:
        return sum(self.demands)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, x in enumerate(self.demands) if x > 0)

    def __getitem__(self, v: int) -> int:
        return self.demands[v]

    def __len__(self) -> int:
        return len(self.demands)

    @classmethod
    def stacked(cls, n: int, r: int, t: int = 1) -> "Distribution":
        demands = [0] * n
        demands[r] = t
        return cls(tuple(demands))


@dataclass(frozen=True)
class Solution:
    """Ordered pebbling steps. Cost (pebbles used, = moves + 1) is defined
    only for demands of total size one; otherwise it is None."""

    moves: tuple[tuple[int, int], ...]
    cost: int | None = None


@dataclass(frozen=True)
class SolveOutcome:
    solvable: bool
    solution: Solution | None
    states_explored: int


def apply_move(c: Configuration, u: int, v: int, g: Graph) -> Configuration:
    """One pebbling step: remove two pebbles from u, place one on adjacent v."""
    if not g.has_edge(u, v):
        raise PebblingError(f"vertices {u} and {v} are not adjacent")
    if c[u] < 2:
        raise PebblingError(f"insufficient pebbles at {u}: have {c[u]}, need 2")
    counts = list(c.counts)
    counts[u] -= 2
    counts[v] += 1
    return Configuration(tuple(counts))


def replay(g: Graph, c: Configuration, moves) -> Configuration:
    """Apply a move sequence, validating every step."""
    cur = c
    for u, v in moves:
        cur = apply_move(cur, u, v, g)
    return cur


def stats(c: Configuration) -> dict:
    """potential = sum of floor(count/2); zeros = empty vertices; support."""
    pot = sum(x // 2 for x in c.counts)
    zeros = sum(1 for x in c.counts if x == 0)
    return {"potential": pot, "zeros": zeros, "support_size": len(c.counts) - zeros}


def weight(c: Configuration, r: int, g: Graph) -> Fraction:
    """Exact weighted supply sum(c(v) * 2^-dist(v,r)), never increased by a
    pebbling step. Computed as scaled integers over 2^diameter."""
    m = g.metrics
    diam = m.diameter
    scaled = sum(c[v] << (diam - m.dist[r][v]) for v in range(g.n))
    return Fraction(scaled, 1 << diam)


class Solver:
    """Reusable exact search for one (graph, demand, mode) triple.

    Depth-first search over move sequences; every move removes a pebble, so
    the state space is a finite DAG. States proven unsolvable are memoized
    across solve() calls. Pruning: per-target weight thresholds (weights
    never increase under moves) and zero potential with unmet demand.
    """

    def __init__(self, g: Graph, d: Distribution, mode: str = "unrestricted",
                 memo_cap: int = 4_000_000):
        if mode not in MODES:
            raise PebblingError(f"unknown mode {mode!r}; expected one of {MODES}")
        if len(d) != g.n:
            raise PebblingError("demand length must equal vertex count")
        self.g = g
        self.demand = d.demands
        self.mode = mode
        self.n = g.n
        self.adj = g.adjacency
        m = g.metrics
        self.dist = m.dist
        diam = m.diameter
        self.targets = d.support
        self.W = {r: tuple(1 << (diam - self.dist[r][v]) for v in range(self.n))
                  for r in self.targets}
        self.need = {r: sum(self.demand[x] * self.W[r][x] for x in self.targets)
                     for r in self.targets}
        score = [sum(self.W[x][v] for x in self.targets) for v in range(self.n)]
        self.tgt_order = tuple(tuple(sorted(self.adj[u], key=lambda v: (-score[v], v)))
                               for u in range(self.n))
        self.failed: set[tuple[int, ...]] = set()
        self.memo_cap = memo_cap

    def solve(self, c) -> SolveOutcome:
        counts = list(c.counts if isinstance(c, Configuration) else c)
        if len(counts) != self.n:
            raise PebblingError("configuration length must equal vertex count")
        demand = self.demand
        single = sum(demand) == 1
        deficit = sum(max(0, demand[v] - counts[v]) for v in range(self.n))
        states = 0
        if deficit == 0:
            return SolveOutcome(True, Solution((), 1 if single else None), states)
        weights = {r: sum(counts[v] * w[v] for v in range(self.n) if counts[v])
                   for r, w in self.W.items()}
        pot = sum(x // 2 for x in counts)
        moves: list[tuple[int, int]] = []
        targets = self.targets
        need = self.need
        W = self.W
        dist = self.dist
        failed = self.failed
        mode = self.mode
        adj_order = self.tgt_order

        def allowed(u: int, v: int) -> bool:
            if mode == "unrestricted":
                return True
            if mode == "greedy":
                return any(demand[x] > counts[x] and dist[x][v] < dist[x][u]
                           for x in targets)
            return any(demand[x] > counts[x] and dist[x][v] <= dist[x][u]
                       for x in targets)

        def rec() -> bool:
            nonlocal deficit, pot, states
            states += 1
            key = tuple(counts)
            if key in failed:
                return False
            for r in targets:
                if weights[r] < need[r]:
                    if len(failed) < self.memo_cap:
                        failed.add(key)
                    return False
            if pot == 0:
                if len(failed) < self.memo_cap:
                    failed.add(key)
                return False
            sources = sorted((v for v in range(self.n) if counts[v] >= 2),
                             key=lambda v: (-counts[v], v))
            for u in sources:
                if counts[u] < 2:
                    continue
                for v in adj_order[u]:
                    if not allowed(u, v):
                        continue
                    # apply u -> v
                    du = max(0, demand[u] - counts[u])
                    dv = max(0, demand[v] - counts[v])
                    pot -= counts[u] // 2 + counts[v] // 2
                    counts[u] -= 2
                    counts[v] += 1
                    pot += counts[u] // 2 + counts[v] // 2
                    deficit += max(0, demand[u] - counts[u]) - du
                    deficit += max(0, demand[v] - counts[v]) - dv
                    for r in targets:
                        weights[r] += W[r][v] - 2 * W[r][u]
                    moves.append((u, v))
                    if deficit == 0 or rec():
                        return True
                    # undo
                    moves.pop()
                    for r in targets:
                        weights[r] -= W[r][v] - 2 * W[r][u]
                    deficit -= max(0, demand[v] - counts[v]) - dv
                    deficit -= max(0, demand[u] - counts[u]) - du
                    pot -= counts[u] // 2 + counts[v] // 2
                    counts[u] += 2
                    counts[v] -= 1
                    pot += counts[u] // 2 + counts[v] // 2
            if len(failed) < self.memo_cap:
                failed.add(key)
            return False

        ok = rec()
        solution = None
        if ok:
            solution = Solution(tuple(moves), len(moves) + 1 if single else None)
        return SolveOutcome(ok, solution, states)


_solver_cache: dict[tuple, Solver] = {}


def get_solver(g: Graph, d: Distribution, mode: str = "unrestricted") -> Solver:
    key = (g, d.demands, mode)
    solver = _solver_cache.get(key)
    if solver is None:
        solver = Solver(g, d, mode)
        _solver_cache[key] = solver
    return solver


def is_solvable(g: Graph, c: Configuration, d: Distribution,
                mode: str = "unrestricted") -> SolveOutcome:
    """Exact decision: can c reach a configuration pointwise >= d?

    greedy mode permits only moves strictly decreasing the distance to some
    unmet target; semi_greedy permits non-increasing ones. Solvers (with
    their memo of failed states) are cached per (graph, demand, mode).
    """
    if d.size < 1:
        return SolveOutcome(True, Solution((), None), 0)
    return get_solver(g, d, mode).solve(c)


def _depth_limited(g: Graph, counts: list, r: int, depth: int,
                   w_vec, moves: list) -> bool:
    if counts[r] >= 1:
        return True
    if depth == 0:
        return False
    # weight lower bound: delivering 1 to r needs weight >= 2^diam (scaled)
    if sum(counts[v] * w_vec[v] for v in range(g.n) if counts[v]) < w_vec[r]:
        return False
    for u in sorted((v for v in range(g.n) if counts[v] >= 2),
                    key=lambda v: (-counts[v], v)):
        for v in sorted(g.adjacency[u], key=lambda x: (-w_vec[x], x)):
            counts[u] -= 2
            counts[v] += 1
            moves.append((u, v))
            if _depth_limited(g, counts, r, depth - 1, w_vec, moves):
                return True
            moves.pop()
            counts[u] += 2
            counts[v] -= 1
    return False


def min_cost_solution(g: Graph, c: Configuration, r: int, max_moves: int | None = None):
    """Minimum-cost solution delivering one pebble to r, by iterative
    deepening on the move count (cost = moves + 1). Returns (solution,
    is_cheap) where is_cheap means cost <= 2^ecc(r), or None when no
    solution exists within the move cap."""
    base = is_solvable(g, c, Distribution.stacked(g.n, r, 1))
    if not base.solvable:
        return None
    cap = len(base.solution.moves)
    if max_moves is not None:
        if not _iddfs_within(g, c, r, max_moves):
            return None
        cap = min(cap, max_moves)
    m = g.metrics
    diam = m.diameter
    w_vec = tuple(1 << (diam - m.dist[r][v]) for v in range(g.n))
    for depth in range(cap + 1):
        moves: list[tuple[int, int]] = []
        if _depth_limited(g, list(c.counts), r, depth, w_vec, moves):
            cost = len(moves) + 1
            return Solution(tuple(moves), cost), cost <= (1 << m.ecc[r])
    raise AssertionError("deepening exceeded a known solution length")


def _iddfs_within(g: Graph, c: Configuration, r: int, max_moves: int) -> bool:
    m = g.metrics
    w_vec = tuple(1 << (m.diameter - m.dist[r][v]) for v in range(g.n))
    return _depth_limited(g, list(c.counts), r, max_moves, w_vec, [])


def solvable_within(g: Graph, c: Configuration, r: int, max_moves: int) -> bool:
    """Can one pebble reach r using at most max_moves pebbling steps?"""
    return _iddfs_within(g, c, r, max_moves)


def find_slides(g: Graph, c: Configuration, cap: int | None = None):
    """All maximal slides: paths v_1..v_k with c(v_1) >= 2 and at least one
    pebble on every interior vertex, so a pebble can travel the whole path.
    Maximal = not extendable (extending needs a pebble on the current end)
    or at the length cap (default n). Deterministic sorted order."""
    if cap is None:
        cap = g.n
    out = []

    def extend(path: list):
        last = path[-1]
        grown = False
        if len(path) < cap and (len(path) == 1 or c[last] >= 1):
            for w in g.adjacency[last]:
                if w not in path:
                    grown = True
                    path.append(w)
                    extend(path)
                    path.pop()
        if not grown and len(path) >= 2:
            out.append(tuple(path))

    for u in range(g.n):
        if c[u] >= 2:
            extend([u])
    return tuple(sorted(out))


def max_fold(g: Graph, c: Configuration, r: int) -> int:
    """Largest t >= 0 with c solvable for the demand of t pebbles on r.
    Binary search between c(r) and the weight upper bound floor(w_r(c))."""
    m = g.metrics
    diam = m.diameter
    scaled = sum(c[v] << (diam - m.dist[r][v]) for v in range(g.n))
    hi = scaled >> diam
    lo = min(c[r], hi)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if is_solvable(g, c, Distribution.stacked(g.n, r, mid)).solvable:
            lo = mid
        else:
            hi = mid - 1
    return lo
