"""Named 3-regular graphs used as fixtures, witnesses and examples."""
from __future__ import annotations

import numpy as np

from .graph import Graph


def lcf_graph(n: int, shifts: list[int], repeats: int) -> Graph:
    """Hamiltonian cubic graph from LCF notation [shifts]^repeats on n vertices."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    seq = shifts * repeats
    for i in range(n):
        j = (i + seq[i % len(seq)]) % n
        edges.add(tuple(sorted((i, j))))
    return Graph(n, tuple(sorted(edges)))


def complete_k4() -> Graph:
    return Graph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def cube() -> Graph:
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return Graph(8, tuple(edges))


def prism(k: int) -> Graph:
    """Two k-cycles joined by a perfect matching (k=3 gives the triangular prism)."""
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]
    return Graph(2 * k, tuple(edges))


def generalized_petersen(n: int, k: int) -> Graph:
    edges = []
    for i in range(n):
        edges += [(i, (i + 1) % n), (i, n + i), (n + i, n + (i + k) % n)]
    return Graph(2 * n, tuple(edges))


def petersen() -> Graph:
    return generalized_petersen(5, 2)


def heawood() -> Graph:
    """14 vertices, girth 6."""
    return lcf_graph(14, [5, -5], 7)


def mobius_kantor() -> Graph:
    """16 vertices, girth 6 (the generalized Petersen graph GP(8, 3))."""
    return generalized_petersen(8, 3)


def mcgee() -> Graph:
    """24 vertices, girth 7, every edge on heptagons."""
    return lcf_graph(24, [12, 7, -7], 8)


def hex_torus(rows: int = 6, cols: int = 6) -> Graph:
    """Honeycomb (brick-wall) tiling of a torus; bipartite for even sizes.

    Vertex (i, j) joins its horizontal neighbors and one vertical neighbor,
    up or down depending on the parity of i + j.
    """
    if rows % 2 or cols % 2 or rows < 2 or cols < 4:
        raise ValueError("hex torus needs even rows >= 2 and even cols >= 4")
    idx = lambda i, j: (i % rows) * cols + (j % cols)
    edges = set()
    for i in range(rows):
        for j in range(cols):
            edges.add(tuple(sorted((idx(i, j), idx(i, j + 1)))))
            if (i + j) % 2 == 0:
                edges.add(tuple(sorted((idx(i, j), idx(i + 1, j)))))
    return Graph(rows * cols, tuple(sorted(edges)))


def fig1_graph() -> Graph:
    """10-vertex cubic graph with four tree-class, ten single-triangle and one
    two-triangle edge at depth 1."""
    return Graph(10, ((0, 4), (0, 6), (0, 8), (1, 2), (1, 6), (1, 7), (2, 6), (2, 8),
                      (3, 4), (3, 5), (3, 9), (4, 8), (5, 7), (5, 9), (7, 9)))


def random_cubic(n: int, rng: np.random.Generator, max_tries: int = 1000) -> Graph:
    """Uniform-ish random simple cubic graph by the pairing model with rejection."""
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even vertex count >= 4")
    for _ in range(max_tries):
        stubs = rng.permutation(np.repeat(np.arange(n), 3))
        pairs = stubs.reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        norm = {tuple(sorted(map(int, e))) for e in pairs}
        if len(norm) == len(pairs):
            return Graph(n, tuple(sorted(norm)))
    raise RuntimeError("failed to sample a simple cubic graph")


NAMED_GRAPHS = {
    "k4": complete_k4,
    "cube": cube,
    "prism": lambda: prism(3),
    "petersen": petersen,
    "heawood": heawood,
    "mobius-kantor": mobius_kantor,
    "mcgee": mcgee,
    "hex-torus": hex_torus,
    "fig1": fig1_graph,
}
