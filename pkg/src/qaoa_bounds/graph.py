"""Graphs of maximum degree 3, rooted edge neighborhoods, exact local MAXCUT
and minimum cycle bases."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_DEGREE = 3
MAX_CUT_VERTICES = 32


class GraphError(ValueError):
    """Invalid graph input (self-loop, duplicate edge, degree overflow, bad line)."""


class CapacityError(RuntimeError):
    """Requested size is beyond what the exact routines support."""


Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with every degree at most 3.

    Edges are stored normalized ``(min, max)`` and sorted; ``adjacency`` is derived.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError("negative vertex count")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            norm.append(_norm(u, v))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphError(f"duplicate edge {a}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        for v, nb in enumerate(adj):
            if len(nb) > MAX_DEGREE:
                raise GraphError(f"vertex {v} has degree {len(nb)} > {MAX_DEGREE}")
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nb)) for nb in adj))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertex_count: int | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, tuple(edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_cubic(self) -> bool:
        return self.vertex_count > 0 and all(len(nb) == 3 for nb in self.adjacency)

    def deficient_vertex(self) -> int | None:
        """First vertex with degree below 3, or None for a 3-regular graph."""
        for v, nb in enumerate(self.adjacency):
            if len(nb) != 3:
                return v
        return None

    def distances_from(self, sources: Iterable[int]) -> list[int]:
        """BFS distance to the nearest source; -1 where unreachable."""
        dist = [-1] * self.vertex_count
        queue = deque()
        for s in sources:
            if dist[s] < 0:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def components(self) -> int:
        seen = [False] * self.vertex_count
        count = 0
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            count += 1
            seen[s] = True
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
        return count

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}


@dataclass(frozen=True)
class RootedSubgraph:
    """Depth-``depth`` neighborhood of the center edge (0, 1).

    Holds every vertex within ``depth`` steps of a center endpoint and every edge
    with at least one endpoint closer than ``depth``; edges joining two vertices
    at distance exactly ``depth`` cannot influence the center expectation and are
    left out.
    """

    graph: Graph
    depth: int

    def __post_init__(self):
        if not self.graph.has_edge(0, 1):
            raise GraphError("center edge (0, 1) missing")

    @property
    def center(self) -> Edge:
        return (0, 1)

    def distances(self) -> list[int]:
        return self.graph.distances_from((0, 1))

    def validate(self) -> None:
        """Check the neighborhood invariants; raises GraphError."""
        p = self.depth
        dist = self.distances()
        for v, d in enumerate(dist):
            if d < 0 or d > p:
                raise GraphError(f"vertex {v} at distance {d} outside depth {p}")
            if d < p and self.graph.degree(v) != 3:
                raise GraphError(f"interior vertex {v} has degree {self.graph.degree(v)}")
        for u, v in self.graph.edges:
            if dist[u] == p and dist[v] == p and (u, v) != (0, 1):
                raise GraphError(f"edge ({u}, {v}) joins two boundary vertices")


def neighborhood_subgraph(g: Graph, e: Sequence[int], p: int) -> RootedSubgraph:
    """Depth-``p`` neighborhood of edge ``e`` relabeled with the center as (0, 1).

    Remaining vertices are numbered in BFS order from the center.
    """
    u, v = int(e[0]), int(e[1])
    if p < 0:
        raise ValueError("depth must be non-negative")
    if not (0 <= u < g.vertex_count and 0 <= v < g.vertex_count) or not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not in graph")
    dist = {u: 0, v: 0}
    order = [u, v]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        if dist[x] == p:
            continue
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                order.append(w)
                queue.append(w)
    label = {x: i for i, x in enumerate(order)}
    edges = [(0, 1)]
    for x in order:
        for w in g.adjacency[x]:
            if w in label and label[x] < label[w] and min(dist[x], dist[w]) < p:
                if {x, w} != {u, v}:
                    edges.append((label[x], label[w]))
    return RootedSubgraph(Graph(len(order), tuple(edges)), p)


@dataclass(frozen=True)
class CutResult:
    best_cut: int
    total_edges: int
    witness: tuple[int, ...]  # +1 / -1 per vertex

    @property
    def fraction(self) -> float:
        return self.best_cut / self.total_edges if self.total_edges else 1.0

    def __str__(self) -> str:
        return f"{self.best_cut}/{self.total_edges}"


def cut_value(g: Graph, spins: Sequence[int]) -> int:
    return sum(1 for u, v in g.edges if spins[u] != spins[v])


def max_cut_brute(s: RootedSubgraph | Graph) -> CutResult:
    """Exact MAXCUT by Gray-code enumeration with vertex 0 pinned."""
    g = s.graph if isinstance(s, RootedSubgraph) else s
    n = g.vertex_count
    if n > MAX_CUT_VERTICES:
        raise CapacityError(f"{n} vertices exceeds brute-force limit {MAX_CUT_VERTICES}")
    m = g.edge_count
    if n <= 1 or m == 0:
        return CutResult(0, m, tuple([1] * n))
    spins = np.ones(n, dtype=np.int64)
    current = 0
    best, best_code = 0, 0
    code = 0
    adj = g.adjacency
    # flipping vertex k changes the cut by (#equal neighbours - #opposite neighbours)
    for i in range(1, 1 << (n - 1)):
        k = (i & -i).bit_length()  # vertex to flip, 1..n-1
        sk = spins[k]
        delta = 0
        for w in adj[k]:
            delta += 1 if spins[w] == sk else -1
        spins[k] = -sk
        current += delta
        code ^= 1 << k
        if current > best:
            best, best_code = current, code
            if best == m:
                break
    witness = tuple(-1 if (best_code >> v) & 1 else 1 for v in range(n))
    return CutResult(best, m, witness)


def minimum_cycle_basis(g: Graph) -> list[list[int]]:
    """Minimum-weight cycle basis, each cycle a closed vertex walk without repeat.

    Candidates are the shortest cycles through each edge, formed from BFS
    shortest paths between its endpoints in every root's BFS tree (the Horton
    set restricted to BFS trees), accepted greedily by length while independent
    over GF(2).
    """
    m = g.edge_count
    rank_target = m - g.vertex_count + g.components()
    if rank_target == 0:
        return []
    eidx = g.edge_index()
    candidates: dict[int, tuple[int, list[int]]] = {}
    for root in range(g.vertex_count):
        parent = [-1] * g.vertex_count
        dist = [-1] * g.vertex_count
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w in g.adjacency[x]:
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    parent[w] = x
                    queue.append(w)

        def path(x):
            out = [x]
            while x != root:
                x = parent[x]
                out.append(x)
            return out

        for u, v in g.edges:
            if dist[u] < 0 or parent[u] == v or parent[v] == u:
                continue
            pu, pv = path(u), path(v)
            if set(pu[:-1]) & set(pv[:-1]):
                continue
            cycle = pu[::-1] + pv  # root ... u, v ... root
            cycle = cycle[:-1]
            mask = 0
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                mask |= 1 << eidx[_norm(a, b)]
            if mask not in candidates:
                candidates[mask] = (len(cycle), cycle)
    basis_rows: dict[int, int] = {}  # pivot bit -> reduced row
    chosen = []
    for mask, (length, cycle) in sorted(candidates.items(), key=lambda kv: (kv[1][0], kv[0])):
        row = mask
        while row:
            pivot = row.bit_length() - 1
            if pivot in basis_rows:
                row ^= basis_rows[pivot]
            else:
                basis_rows[pivot] = row
                chosen.append(cycle)
                break
        if len(chosen) == rank_target:
            break
    return chosen


def girth(g: Graph) -> float:
    """Length of the shortest cycle (inf for forests)."""
    best = float("inf")
    for root in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        parent = [-1] * g.vertex_count
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w in g.adjacency[x]:
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    parent[w] = x
                    queue.append(w)
                elif parent[x] != w:
                    best = min(best, dist[x] + dist[w] + 1)
    return best


def parse_graph(text: str) -> Graph:
    """Parse the whitespace edge-list format; '#' starts a comment line."""
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    degree: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex index")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise GraphError(f"line {lineno}: duplicate edge {e} (first on line {seen[e]})")
        seen[e] = lineno
        for x in e:
            degree[x] = degree.get(x, 0) + 1
            if degree[x] > MAX_DEGREE:
                raise GraphError(f"line {lineno}: vertex {x} exceeds degree {MAX_DEGREE}")
        edges.append(e)
    return Graph.from_edges(edges)


def serialize_graph(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted(g.edges))


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
