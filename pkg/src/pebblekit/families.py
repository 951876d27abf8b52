"""Graph families: Kneser graphs, 2-paths (overlapping fan graphs), rooted
trees, spinal spanning trees, and maximum root-path partitions."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .graph import Graph, GraphError, shortest_path, simplicial_vertices

__all__ = [
    "FamilyError",
    "FanSpec",
    "TwoPath",
    "RootedTree",
    "kneser",
    "two_path",
    "is_two_path",
    "is_spinal_root",
    "spinal_tree",
    "max_path_partition",
    "random_tree",
    "enumerate_fan_specs",
]


class FamilyError(ValueError):
    """Invalid family parameters or a spec that violates family invariants."""


def kneser(m: int, h: int) -> Graph:
    """Kneser graph: vertices are the h-subsets of {1..m} in lexicographic
    order, adjacent iff disjoint. Requires m >= 2h + 1 (connectedness)."""
    if h < 1:
        raise FamilyError("subset size must be at least 1")
    if m < 2 * h + 1:
        raise FamilyError(f"kneser({m},{h}) is disconnected; need m >= 2h+1")
    subsets = list(combinations(range(1, m + 1), h))
    edges = []
    for i, j in combinations(range(len(subsets)), 2):
        if not set(subsets[i]) & set(subsets[j]):
            edges.append((i, j))
    labels = tuple("{" + ",".join(map(str, s)) + "}" for s in subsets)
    return Graph(len(subsets), tuple(edges), labels)


@dataclass(frozen=True)
class FanSpec:
    """Fan sizes k_1..k_{d-1} for a 2-path of diameter d = len(k) + 1, plus
    overlap flags: overlap[i] means fans i+1 and i+2 share one fan vertex."""

    k: tuple[int, ...]
    overlap: tuple[bool, ...] = ()

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if not k or any(x < 1 for x in k):
            raise FamilyError("fan sizes must be a nonempty sequence of positive integers")
        overlap = tuple(bool(x) for x in self.overlap) if self.overlap else (False,) * (len(k) - 1)
        if len(overlap) != len(k) - 1:
            raise FamilyError(f"need {len(k) - 1} overlap flags for {len(k)} fans, got {len(overlap)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "overlap", overlap)

    @property
    def d(self) -> int:
        return len(self.k) + 1

    def to_json(self) -> str:
        return json.dumps({"k": list(self.k), "overlap": list(self.overlap)},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "FanSpec":
        obj = json.loads(text)
        return cls(tuple(obj["k"]), tuple(obj.get("overlap", ())))


@dataclass(frozen=True)
class TwoPath:
    """A generated 2-path: its graph, the spine x_0..x_d, and the ordered fan
    vertices (interiors) of each fan path Q_i."""

    graph: Graph
    spine: tuple[int, ...]
    interiors: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.spine) - 1

    @property
    def fan_members(self) -> tuple[frozenset[int], ...]:
        """Full vertex set of each fan F_i: the path Q_i plus its center."""
        out = []
        for i, interior in enumerate(self.interiors, start=1):
            out.append(frozenset((self.spine[i - 1], self.spine[i], self.spine[i + 1]) + interior))
        return tuple(out)

    def fans_containing(self, v: int) -> tuple[int, ...]:
        """1-based indices of fans whose fan-vertex set contains v."""
        return tuple(i for i, interior in enumerate(self.interiors, start=1) if v in interior)


@dataclass(frozen=True)
class RootedTree:
    """A tree (connected, n-1 edges) with a distinguished root."""

    graph: Graph
    root: int

    def __post_init__(self):
        if len(self.graph.edges) != self.graph.n - 1:
            raise FamilyError("not a tree: edge count must be n - 1")
        if not 0 <= self.root < self.graph.n:
            raise FamilyError(f"root {self.root} out of range")

    @cached_property
    def parents(self) -> tuple[int, ...]:
        """parent[v] on the path toward the root; parent[root] = root."""
        par = [-1] * self.graph.n
        par[self.root] = self.root
        stack = [self.root]
        while stack:
            u = stack.pop()
            for w in self.graph.adjacency[u]:
                if par[w] < 0:
                    par[w] = u
                    stack.append(w)
        return tuple(par)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parents):
            if v != self.root:
                ch[p].append(v)
        return tuple(tuple(sorted(c)) for c in ch)


def two_path(spec: FanSpec) -> TwoPath:
    """Build the 2-path described by a FanSpec: spine x_0..x_d, and for each
    i a fan F_i = path Q_i = x_{i-1}, v_{i,1}, ..., v_{i,k_i}, x_{i+1} whose
    every vertex is adjacent to the center x_i. An overlap flag identifies
    the last fan vertex of Q_i with the first of Q_{i+1}.

    The result is validated: diameter d, spine a shortest path, and exactly
    two simplicial vertices x_0, x_d. Specs that collapse the diameter (for
    example two overlapping size-1 fans) are rejected.
    """
    if not isinstance(spec, FanSpec):
        spec = FanSpec(tuple(spec))
    d = spec.d
    spine = tuple(range(d + 1))
    edges = {(i, i + 1) for i in range(d)}
    interiors: list[tuple[int, ...]] = []
    labels = [f"x{i}" for i in range(d + 1)]
    nxt = d + 1
    for f in range(1, d):  # fan f, centered at spine[f]
        interior: list[int] = []
        if f >= 2 and spec.overlap[f - 2]:
            interior.append(interiors[f - 2][-1])
        pos = len(interior)
        while len(interior) < spec.k[f - 1]:
            interior.append(nxt)
            pos += 1
            labels.append(f"v{f}.{pos}")
            nxt += 1
        q = [spine[f - 1], *interior, spine[f + 1]]
        for a, b in zip(q, q[1:]):
            edges.add((a, b) if a < b else (b, a))
        for w in q:
            edges.add((spine[f], w) if spine[f] < w else (w, spine[f]))
        interiors.append(tuple(interior))
    g = Graph(nxt, tuple(edges), tuple(labels))
    tp = TwoPath(g, spine, tuple(interiors))
    _validate_two_path(tp)
    return tp


def _validate_two_path(tp: TwoPath):
    g = tp.graph
    d = tp.d
    m = g.metrics
    if m.diameter != d:
        raise FamilyError(f"spec collapses the diameter: spine length {d} but diameter {m.diameter}")
    if m.dist[tp.spine[0]][tp.spine[-1]] != d:
        raise FamilyError("spine is not a shortest path between its endpoints")
    simp = simplicial_vertices(g)
    if simp != frozenset({tp.spine[0], tp.spine[-1]}):
        raise FamilyError(f"expected exactly the two spine ends simplicial, got {sorted(simp)}")


def enumerate_fan_specs(max_n: int, d_values=None):
    """All FanSpecs whose 2-path has at most max_n vertices, skipping specs
    the constructor rejects. Deterministic order."""
    ds = list(d_values) if d_values is not None else list(range(2, max(2, max_n - 1)))
    for d in ds:
        fan_budget = max_n - (d + 1)
        if fan_budget < 1:
            continue

        def k_tuples(count, total):
            # compositions with every part >= 1 and sum <= total
            if count == 0:
                yield ()
                return
            for first in range(1, total - (count - 1) + 1):
                for rest in k_tuples(count - 1, total - first):
                    yield (first,) + rest

        # each overlap flag saves one vertex, so sums up to budget + d - 2 can fit
        for ks in k_tuples(d - 1, fan_budget + d - 2):
            for mask in product((False, True), repeat=d - 2):
                n = d + 1 + sum(ks) - sum(mask)
                if n > max_n:
                    continue
                try:
                    spec = FanSpec(ks, mask)
                    two_path(spec)
                except FamilyError:
                    continue
                yield spec


def _induced_simplicial(g: Graph, verts: frozenset[int]) -> list[int]:
    out = []
    for v in verts:
        nb = [w for w in g.adjacency[v] if w in verts]
        if all(g.has_edge(a, b) for a, b in combinations(nb, 2)):
            out.append(v)
    return sorted(out)


def is_two_path(g: Graph):
    """Decide the recursive 2-path definition: the graph is K_2 or K_3, or it
    has exactly two simplicial vertices and deleting one whose neighborhood
    is an edge leaves a 2-path. Returns (verdict, spine-or-None), the spine
    being a shortest path between the two simplicial vertices."""
    n = g.n
    if n < 2:
        return False, None
    adj = [set(a) for a in g.adjacency]
    memo: dict[frozenset[int], bool] = {}

    def rec(verts: frozenset[int]) -> bool:
        cached = memo.get(verts)
        if cached is not None:
            return cached
        k = len(verts)
        if k == 2:
            a, b = sorted(verts)
            res = g.has_edge(a, b)
        elif k == 3 and all(g.has_edge(a, b) for a, b in combinations(sorted(verts), 2)):
            res = True
        else:
            simp = _induced_simplicial(g, verts)
            res = False
            if len(simp) == 2:
                for v in simp:
                    nb = [w for w in adj[v] if w in verts]
                    if len(nb) == 2 and g.has_edge(nb[0], nb[1]) and rec(verts - {v}):
                        res = True
                        break
        memo[verts] = res
        return res

    full = frozenset(range(n))
    if not rec(full):
        return False, None
    ends = _induced_simplicial(g, full)[:2]
    return True, shortest_path(g, ends[0], ends[1])


def _all_spine_routes(g: Graph, x0: int, xd: int, through: int):
    """All shortest x0,xd-paths passing through a given vertex, in
    lexicographic order. The vertex can only sit at its distance from x0."""
    m = g.metrics
    d = m.dist[x0][xd]
    pos = m.dist[x0][through]
    out = []

    def extend(path):
        p = len(path) - 1
        last = path[-1]
        if last == xd:
            out.append(tuple(path))
            return
        for w in sorted(g.adjacency[last]):
            if m.dist[w][xd] != d - p - 1:
                continue
            if p + 1 == pos and w != through:
                continue
            path.append(w)
            extend(path)
            path.pop()

    if m.dist[x0][through] + m.dist[through][xd] == d:
        extend([x0])
    return out


def _fan_decompositions(g: Graph, spine: tuple[int, ...]):
    """Try to realize `spine` as the spine of a fan representation: for each
    center spine[i] find an ordered fan path from spine[i-1] to spine[i+1]
    through neighbors of the center, so that consecutive fans share at most
    one fan vertex and the fans cover every non-spine vertex. Yields the
    interior tuples of the first representation found, else nothing."""
    d = len(spine) - 1
    spine_set = set(spine)
    others = frozenset(range(g.n)) - spine_set
    adj = [set(a) for a in g.adjacency]

    def rec(i, covered, prev_interior):
        if i == d:
            if covered == others:
                yield []
            return
        center = spine[i]
        a, b = spine[i - 1], spine[i + 1]
        pool = adj[center] - spine_set

        def paths(cur):
            last = cur[-1]
            if b in adj[last]:
                yield tuple(cur)
            for w in sorted(pool - set(cur)):
                if w in adj[last]:
                    cur.append(w)
                    yield from paths(cur)
                    cur.pop()

        for first in sorted(pool & adj[a]):
            for interior in paths([first]):
                if prev_interior is not None and len(set(interior) & set(prev_interior)) > 1:
                    continue
                for rest in rec(i + 1, covered | set(interior), interior):
                    yield [interior] + rest

    yield from rec(1, frozenset(), None)


def _spinal_representation(tp: TwoPath, r: int):
    """A representation (spine, interiors) with r on the spine, if one
    exists. The stored representation is used when r already lies on it;
    otherwise every shortest spine re-routing through r is searched for a
    valid fan decomposition."""
    if r in tp.spine:
        return tp.spine, tp.interiors
    g = tp.graph
    x0, xd = tp.spine[0], tp.spine[-1]
    m = g.metrics
    if m.dist[x0][r] + m.dist[r][xd] != tp.d:
        return None
    for spine in _all_spine_routes(g, x0, xd, r):
        for interiors in _fan_decompositions(g, spine):
            return spine, tuple(interiors)
    return None


def is_spinal_root(tp: TwoPath, r: int) -> bool:
    """True when r lies on the spine of some representation of the 2-path."""
    if not 0 <= r < tp.graph.n:
        raise FamilyError(f"vertex {r} not in graph")
    return _spinal_representation(tp, r) is not None


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def spinal_tree(tp: TwoPath, r: int) -> RootedTree:
    """Spanning tree T_r of the 2-path whose rooted pebbling number realizes
    the two-arms-plus-pendants path partition:

    - r on the spine of some representation: arms along that spine (lengths
      i and d-i), every fan vertex pendant on the least center of a fan
      containing it;
    - r on no spine: arms are the two shortest paths from r to the spine
      ends (lengths summing to d+1), every remaining vertex pendant on its
      least neighbor interior to an arm.
    """
    g = tp.graph
    if not 0 <= r < g.n:
        raise FamilyError(f"vertex {r} not in graph")
    edges: set[tuple[int, int]] = set()
    rep = _spinal_representation(tp, r)
    if rep is not None:
        spine, interiors = rep
        for a, b in zip(spine, spine[1:]):
            edges.add(_norm_edge(a, b))
        centers: dict[int, list[int]] = {}
        for f, interior in enumerate(interiors, start=1):
            for v in interior:
                centers.setdefault(v, []).append(spine[f])
        for v, cs in centers.items():
            edges.add(_norm_edge(v, min(cs)))
    else:
        x0, xd = tp.spine[0], tp.spine[-1]
        arm_a = shortest_path(g, r, x0)
        arm_b = shortest_path(g, r, xd)
        for path in (arm_a, arm_b):
            for a, b in zip(path, path[1:]):
                edges.add(_norm_edge(a, b))
        on_arms = set(arm_a) | set(arm_b)
        hooks = on_arms - {x0, xd}  # pendants here never extend an arm
        for v in range(g.n):
            if v in on_arms:
                continue
            cands = [w for w in g.adjacency[v] if w in hooks]
            if not cands:
                raise FamilyError(f"vertex {v} has no pendant attachment for root {r}")
            edges.add(_norm_edge(v, min(cands)))
    t = Graph(g.n, tuple(edges), g.labels)
    if len(t.edges) != g.n - 1:
        raise FamilyError("spinal construction did not produce a spanning tree")
    return RootedTree(t, r)


def max_path_partition(t: RootedTree) -> tuple[int, ...]:
    """Edge-length sequence (non-increasing) of a maximum r-path partition:
    repeatedly peel the deepest descending path, starting from the root, ties
    broken by least vertex index. The first entry equals ecc(root)."""
    g = t.graph
    if g.n == 1:
        return ()
    height = [0] * g.n
    order = []
    stack = [t.root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(t.children[v])
    for v in reversed(order):
        for c in t.children[v]:
            height[v] = max(height[v], height[c] + 1)

    def lengths(v) -> list[int]:
        ch = sorted(t.children[v], key=lambda c: (-height[c], c))
        if not ch:
            return [0]
        first = lengths(ch[0])
        out = [1 + first[0]] + first[1:]
        for c in ch[1:]:
            sub = lengths(c)
            out += [1 + sub[0]] + sub[1:]
        return out

    return tuple(sorted(lengths(t.root), reverse=True))


def random_tree(n: int, seed: int) -> RootedTree:
    """Uniform random labeled tree (Prüfer-decoded), rooted at vertex 0.
    Deterministic for a fixed seed."""
    if n < 1:
        raise FamilyError("need at least one vertex")
    if n == 1:
        return RootedTree(Graph(1, ()), 0)
    if n == 2:
        return RootedTree(Graph(2, ((0, 1),)), 0)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return RootedTree(Graph(n, tuple(edges)), 0)
