"""Approximation-ratio bounds built from per-edge neighborhood classes.

For a 3-regular graph G with N_k edges in class k, QAOA's expected cut is
sum_k N_k f_k while the true maximum cut is at most sum_k N_k c_k (each edge
can at best be cut as often as in its own neighborhood's best cut), so the
ratio of the two sums lower-bounds the approximation ratio.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Iterable, Sequence

from .atlas import Atlas, SubgraphCounts, count_subgraphs
from .graph import Graph, max_cut_brute
from .graphs_lib import cube, hex_torus, mcgee, petersen
from .qaoa import Angles, edge_expectation


def fmt4(x: float) -> str:
    """Four-decimal display: round to 5 places, then half-even to 4.

    This matches the published tables, where 0.692450 shows as 0.6924 and
    0.636895 as 0.6369.
    """
    d = Decimal(repr(float(x))).quantize(Decimal("1e-5"), ROUND_HALF_EVEN)
    return str(d.quantize(Decimal("1e-4"), ROUND_HALF_EVEN))


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    p: int
    counts: SubgraphCounts
    numerator: float             # sum N_k f_k, expected cut edges
    denominator: Fraction        # sum N_k c_k, in edge units
    angles_used: Angles

    @property
    def lower_bound(self) -> float:
        return self.numerator / float(self.denominator)

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "p": self.p,
            "counts": {str(k): v for k, v in self.counts.counts.items()},
            "numerator": self.numerator,
            "denominator": str(self.denominator),
            "lower_bound": self.lower_bound,
            "angles_deg": [round(float(x), 4) for x in self.angles_used.degrees()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_tsv(self) -> str:
        counts = ",".join(f"{k}:{v}" for k, v in self.counts.counts.items())
        return "\t".join([self.graph_id, str(self.p), fmt4(self.lower_bound),
                          f"{self.numerator:.6f}", str(self.denominator), counts])


class ClassValues:
    """Lazily computed (f, c) per atlas class at fixed angles."""

    def __init__(self, atlas: Atlas, angles: Angles):
        self.atlas = atlas
        self.angles = angles
        self._f: dict[int, float] = {}
        self._c: dict[int, Fraction] = {}

    def f(self, k: int) -> float:
        if k not in self._f:
            self._f[k] = edge_expectation(self.atlas.classes[k], self.angles)
        return self._f[k]

    def c(self, k: int) -> Fraction:
        if k not in self._c:
            r = max_cut_brute(self.atlas.classes[k])
            self._c[k] = Fraction(r.best_cut, r.total_edges)
        return self._c[k]


def lower_bound_fixed_angles(g: Graph, atlas: Atlas, angles: Angles,
                             graph_id: str = "graph", values: ClassValues | None = None) -> BoundReport:
    """sum N_k f_k / sum N_k c_k for ``g`` at the given angles."""
    values = values or ClassValues(atlas, angles)
    counts = count_subgraphs(g, atlas)
    num = math.fsum(n * values.f(k) for k, n in counts.counts.items())
    den = sum((n * values.c(k) for k, n in counts.counts.items()), Fraction(0))
    return BoundReport(graph_id, atlas.depth, counts, num, den, angles)


def ordering_lower_bound(entries: Iterable[tuple[float, Fraction | float, int]]) -> float:
    """sum N f / sum N c over (f, c, N) triples."""
    entries = list(entries)
    if not entries:
        raise ValueError("need at least one entry")
    for f, c, n in entries:
        if f <= 0 or c <= 0 or n < 0:
            raise ValueError("f and c must be positive, counts non-negative")
    num = math.fsum(n * f for f, _, n in entries)
    den = math.fsum(n * float(c) for _, c, n in entries)
    return num / den


def ordering_chain(entries: Sequence[tuple[float, Fraction | float, int]]) -> list[float]:
    """Bounds obtained by adding entries in increasing order of f/c.

    The sequence is non-decreasing: each added entry has a local ratio at least
    as large as the running ratio.
    """
    ordered = sorted(entries, key=lambda t: t[0] / float(t[1]))
    return [ordering_lower_bound(ordered[: i + 1]) for i in range(len(ordered))]


def assignment_lower_bound(classes: Iterable[int], values: ClassValues) -> float:
    """Ratio restricted to a multiset of edge classes (e.g. one environment)."""
    classes = list(classes)
    if not classes:
        raise ValueError("empty assignment")
    num = math.fsum(values.f(k) for k in classes)
    den = sum((values.c(k) for k in classes), Fraction(0))
    return num / float(den)


def upper_bound_cmin(p: int) -> Fraction:
    """(2p + 2) / (2p + 3): depth-p QAOA sees the same trees on a bipartite
    (2p+2)-gon tiling and an odd (2p+3)-gon tiling."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return Fraction(2 * p + 2, 2 * p + 3)


def build_qgon_tilings(p: int) -> tuple[Graph, Graph]:
    """Finite witnesses (even tiling, odd tiling) with every edge tree-class.

    p=1: the cube (squares) and the Petersen graph (pentagons).
    p=2: a hexagonal torus and the McGee graph (girth 7).
    """
    if p == 1:
        return cube(), petersen()
    if p == 2:
        return hex_torus(6, 6), mcgee()
    raise ValueError("tilings are provided for p in {1, 2}")


def bipartition_witness(g: Graph) -> tuple[int, ...] | None:
    """A 2-coloring cutting every edge, or None if ``g`` is not bipartite."""
    color = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return tuple(color)


# Reference curves for plotting: best known classical guarantees.
GOEMANS_WILLIAMSON = 0.8786
CUBIC_SDP = 0.9326


def plot_rows(tree_values: dict[int, float], p_max: int = 8) -> list[dict]:
    rows = []
    for p in range(1, p_max + 1):
        rows.append({
            "p": p,
            "qaoa_lower": tree_values.get(p, ""),
            "upper": float(upper_bound_cmin(p)),
            "goemans_williamson": GOEMANS_WILLIAMSON,
            "cubic_classical": CUBIC_SDP,
        })
    return rows


def plot_csv(tree_values: dict[int, float], p_max: int = 8) -> str:
    buf = io.StringIO()
    rows = plot_rows(tree_values, p_max)
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (fmt4(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()
