"""Canonical labeling of rooted subgraphs.

Individualization-refinement: an equitable partition seeded by (distance to the
center, degree), then backtracking over non-singleton cells.  Automorphisms
discovered at leaves prune sibling branches, which keeps tree-like neighborhoods
(with exponentially large automorphism groups) cheap.  The center endpoints
always form the first cell, so their swap is the only freedom they have.
"""
from __future__ import annotations

from typing import Sequence

from .graph import Graph, RootedSubgraph


def _refine(adj: Sequence[Sequence[int]], colors: list[int], ecol=None) -> list[int]:
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        if ecol is None:
            sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        else:
            sigs = [(colors[v], tuple(sorted((colors[w], ecol[v][i]) for i, w in enumerate(adj[v]))))
                    for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return colors
        ncolors = len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    # v moves to a fresh cell placed just before the rest of its old cell
    c = colors[v]
    return [2 * x + (0 if (u == v or x != c) else 1) for u, x in enumerate(colors)]


class _Search:
    def __init__(self, adj, edges, ecol=None, edge_colors=None):
        self.adj = adj
        self.edges = edges
        self.ecol = ecol                # per vertex, color of each incident edge
        self.edge_colors = edge_colors  # aligned with edges
        self.best = None
        self.best_perm = None
        self.best_path = None
        self.first_path = None
        self.first_perm = None
        self.first_code = None
        self.automorphisms: list[tuple[int, ...]] = []

    def encode(self, perm):
        if self.edge_colors is None:
            return tuple(sorted((perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
                                for u, v in self.edges))
        return tuple(sorted(((perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])) + (c,)
                            for (u, v), c in zip(self.edges, self.edge_colors)))

    def run(self, colors, path):
        """Returns a level to unwind to (int) or None."""
        colors = _refine(self.adj, colors, self.ecol)
        n = len(colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm = colors  # discrete: color rank is the position
            code = self.encode(perm)
            if self.first_code is None:
                self.first_code, self.first_perm, self.first_path = code, perm, path
            if self.best is None or code < self.best:
                self.best, self.best_perm, self.best_path = code, perm, path
                return None
            for ref_code, ref_perm, ref_path in ((self.first_code, self.first_perm, self.first_path),
                                                 (self.best, self.best_perm, self.best_path)):
                if code == ref_code and ref_perm is not perm:
                    inv_ref = [0] * n
                    for v, pos in enumerate(ref_perm):
                        inv_ref[pos] = v
                    aut = tuple(inv_ref[perm[v]] for v in range(n))  # maps current -> reference
                    gamma = [0] * n
                    for v, w in enumerate(aut):
                        gamma[w] = v  # reference -> current
                    self.automorphisms.append(tuple(gamma))
                    level = 0
                    common = min(len(path), len(ref_path))
                    while level < common and ref_path[level] == path[level]:
                        level += 1
                    if level < common and all(gamma[x] == x for x in path[:level]) \
                            and gamma[ref_path[level]] == path[level]:
                        return level
                    return None
            return None
        depth = len(path)
        explored: list[int] = []
        for v in target:
            if explored and self._in_orbit(v, explored, path):
                continue
            explored.append(v)
            res = self.run(_individualize(colors, v), path + (v,))
            if res is not None and res < depth:
                return res
        return None

    def _in_orbit(self, v, explored, path):
        gens = [g for g in self.automorphisms if all(g[x] == x for x in path)]
        if not gens:
            return False
        parent = list(range(len(gens[0])))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for x, y in enumerate(g):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        rv = find(v)
        return any(find(u) == rv for u in explored)


def canonical_form(g: Graph, roots: Sequence[int] = (0, 1),
                   edge_colors: Sequence[int] | None = None) -> tuple[tuple, list[int]]:
    """Canonical edge list and labeling (``perm[v]`` = canonical position of ``v``).

    Isomorphisms are required to map the root set onto itself and, when
    ``edge_colors`` (aligned with ``g.edges``) is given, to preserve edge colors.
    """
    dist = g.distances_from(roots)
    adj = g.adjacency
    ecol = None
    if edge_colors is not None:
        edge_colors = [int(c) for c in edge_colors]
        lookup = {e: c for e, c in zip(g.edges, edge_colors)}
        ecol = [[lookup[(v, w) if v < w else (w, v)] for w in adj[v]] for v in range(g.vertex_count)]
    colors = [(dist[v], len(adj[v])) for v in range(g.vertex_count)]
    if ecol is not None:
        colors = [c + (tuple(sorted(ecol[v])),) for v, c in enumerate(colors)]
    ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
    search = _Search(adj, g.edges, ecol, edge_colors)
    search.run([ranks[c] for c in colors], ())
    return search.best, list(search.best_perm)


def canonical_key(s: RootedSubgraph | Graph) -> bytes:
    """Byte string equal for two rooted subgraphs iff a center-preserving
    isomorphism exists between them."""
    g = s.graph if isinstance(s, RootedSubgraph) else s
    code, _ = canonical_form(g)
    n = g.vertex_count
    out = bytearray([n & 0xFF, n >> 8])
    for u, v in code:
        out += bytes((u, v)) if n < 256 else u.to_bytes(2, "little") + v.to_bytes(2, "little")
    return bytes(out)


def colored_key(g: Graph, edge_colors: Sequence[int], roots: Sequence[int] = (0, 1)) -> bytes:
    """Like ``canonical_key`` but isomorphisms must also preserve edge colors."""
    code, _ = canonical_form(g, roots, edge_colors)
    return repr((g.vertex_count, code)).encode()


def canonical_graph(s: RootedSubgraph) -> RootedSubgraph:
    """The canonically relabeled representative (center stays 0, 1)."""
    _, perm = canonical_form(s.graph)
    return RootedSubgraph(s.graph.relabel(perm), s.depth)


def nauty_key(g: Graph, roots: Sequence[int] = (0, 1)) -> bytes:
    """Same equivalence as ``canonical_key`` (root set mapped onto itself), via
    nauty's certificate.  Much faster on large partial hosts, but the bytes are
    not comparable with ``canonical_key`` and are used only for in-memory
    deduplication."""
    import pynauty

    n = g.vertex_count
    rootset = set(roots)
    cells = [rootset] + ([set(range(n)) - rootset] if n > len(rootset) else [])
    ng = pynauty.Graph(n, adjacency_dict={v: list(g.adjacency[v]) for v in range(n)},
                       vertex_coloring=cells)
    return n.to_bytes(2, "little") + pynauty.certificate(ng)
