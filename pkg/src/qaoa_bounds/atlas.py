"""Atlas of every depth-p edge neighborhood that can occur in a 3-regular graph.

Classes are generated from the depth-(p-1) classes by filling the free degree
slots of the outermost shell one at a time, deduplicating every partial state by
canonical key.  Distinct seeds never produce the same completion (truncating a
completion to depth p-1 gives back its seed), so seeds can be processed
independently and streamed.
"""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .canon import canonical_graph, canonical_key
from .graph import (CapacityError, CutResult, Graph, GraphError, RootedSubgraph,
                    max_cut_brute, neighborhood_subgraph)
from .qaoa import Angles, edge_expectation, fixed_angles

ATLAS_MAGIC = "qaoa-bounds-atlas"
ATLAS_FORMAT_VERSION = 1
MAX_ENUMERATION_DEPTH = 2  # depth 3 has ~10^6 classes; opt in explicitly
MEMO_LIMIT = 500_000     # classify() cache entries before it is reset


def _root_subgraph() -> RootedSubgraph:
    return RootedSubgraph(Graph(2, ((0, 1),)), 0)


def _completions(seed: RootedSubgraph) -> Iterator[RootedSubgraph]:
    """All depth-(d+1) classes whose depth-d truncation is ``seed``."""
    p = seed.depth + 1
    shell = p - 1
    start = Graph(seed.graph.vertex_count, seed.graph.edges)
    seen = {canonical_key(start)}
    stack = [start]
    while stack:
        g = stack.pop()
        dist = g.distances_from((0, 1))
        open_inner = [v for v in range(g.vertex_count) if dist[v] == shell and g.degree(v) < 3]
        if not open_inner:
            yield canonical_graph(RootedSubgraph(g, p))
            continue
        v = open_inner[0]
        children = []
        for w in open_inner[1:]:
            if not g.has_edge(v, w):
                children.append(Graph(g.vertex_count, g.edges + ((v, w),)))
        for w in range(g.vertex_count):
            if dist[w] == p and g.degree(w) < 3 and not g.has_edge(v, w):
                children.append(Graph(g.vertex_count, g.edges + ((v, w),)))
        children.append(Graph(g.vertex_count + 1, g.edges + ((v, g.vertex_count),)))
        for child in children:
            key = canonical_key(child)
            if key not in seen:
                seen.add(key)
                stack.append(child)


def _sort_key(s: RootedSubgraph) -> tuple:
    return (s.graph.vertex_count, s.graph.edge_count, canonical_key(s))


def enumerate_subgraphs(p: int, allow_large: bool = False) -> list[RootedSubgraph]:
    """Every depth-``p`` neighborhood class, canonically labeled and sorted by
    (vertex count, edge count, key).  Index 0 is always the tree."""
    if p < 0:
        raise ValueError("depth must be non-negative")
    if p > MAX_ENUMERATION_DEPTH and not allow_large:
        raise CapacityError(f"enumerating depth {p} needs allow_large=True")
    level = [_root_subgraph()]
    for _ in range(p):
        nxt = [c for seed in level for c in _completions(seed)]
        level = sorted(nxt, key=_sort_key)
    # the tree has the most vertices; put it first
    trees = [s for s in level if s.graph.edge_count == s.graph.vertex_count - 1]
    rest = [s for s in level if s.graph.edge_count != s.graph.vertex_count - 1]
    return trees + rest


def iter_subgraphs_streaming(p: int) -> Iterator[tuple[int, RootedSubgraph]]:
    """Yield (seed index, class) for depth ``p`` without holding the full level;
    seeds are the sorted depth-(p-1) classes."""
    for i, seed in enumerate(enumerate_subgraphs(p - 1, allow_large=True)):
        for c in _completions(seed):
            yield i, c


@dataclass
class Atlas:
    """Indexed collection of depth-p classes with a key lookup."""

    depth: int
    classes: list[RootedSubgraph]
    index: dict[bytes, int] = field(init=False, repr=False)
    # labeled edge list -> class; BFS-labeled neighborhoods repeat a lot
    _memo: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        self.index = {canonical_key(s): i for i, s in enumerate(self.classes)}

    @classmethod
    def build(cls, p: int, allow_large: bool = False) -> "Atlas":
        return cls(p, enumerate_subgraphs(p, allow_large))

    def __len__(self) -> int:
        return len(self.classes)

    def classify(self, s: RootedSubgraph) -> int:
        labeled = (s.graph.vertex_count, s.graph.edges)
        k = self._memo.get(labeled)
        if k is None:
            try:
                k = self.index[canonical_key(s)]
            except KeyError:
                raise GraphError("subgraph not in atlas (not a valid neighborhood?)") from None
            if len(self._memo) >= MEMO_LIMIT:
                self._memo.clear()
            self._memo[labeled] = k
        return k


def classify_edge(g: Graph, e: Sequence[int], atlas: Atlas) -> int:
    """Atlas index of the depth-p neighborhood of edge ``e`` in ``g``."""
    return atlas.classify(neighborhood_subgraph(g, e, atlas.depth))


@dataclass(frozen=True)
class SubgraphCounts:
    """How many edges of a graph fall in each atlas class."""

    depth: int
    counts: dict[int, int]
    edge_classes: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def count_subgraphs(g: Graph, atlas: Atlas) -> SubgraphCounts:
    if not g.is_cubic():
        raise GraphError("graph is not 3-regular")
    cls = tuple(classify_edge(g, e, atlas) for e in g.edges)
    return SubgraphCounts(atlas.depth, dict(sorted(Counter(cls).items())), cls)


# ---------------------------------------------------------------- entries

@dataclass
class AtlasEntry:
    """One class with its local MAXCUT and QAOA data."""

    p: int
    index: int
    subgraph: RootedSubgraph
    c_max: CutResult
    f_fixed: float
    f_opt: float | None = None
    opt_angles: Angles | None = None
    env_count: int | None = None
    reference_index: int | None = None

    @property
    def key(self) -> bytes:
        return canonical_key(self.subgraph)

    @property
    def c(self) -> Fraction:
        """Local MAXCUT fraction as an exact rational."""
        return Fraction(self.c_max.best_cut, self.c_max.total_edges)

    def to_record(self) -> dict:
        return {
            "id": [self.p, self.index],
            "key": self.key.hex(),
            "vertex_count": self.subgraph.graph.vertex_count,
            "edges": [list(e) for e in self.subgraph.graph.edges],
            "c_max": str(self.c_max),
            "f_fixed": self.f_fixed,
            "f_opt": self.f_opt,
            "opt_angles_deg": None if self.opt_angles is None else [float(x) for x in self.opt_angles.degrees()],
            "env_count": self.env_count,
            "reference_index": self.reference_index,
        }

    @classmethod
    def from_record(cls, r: dict) -> "AtlasEntry":
        p, index = r["id"]
        g = Graph(r["vertex_count"], tuple(tuple(e) for e in r["edges"]))
        sub = RootedSubgraph(g, p)
        if canonical_key(sub).hex() != r["key"]:
            raise AtlasFormatError(f"record {index}: key does not match edges")
        cut, total = (int(x) for x in r["c_max"].split("/"))
        angles = None if r["opt_angles_deg"] is None else Angles.from_degrees(r["opt_angles_deg"])
        return cls(p, index, sub, CutResult(cut, total, ()), r["f_fixed"], r["f_opt"], angles,
                   r["env_count"], r["reference_index"])


def _make_entry(args: tuple) -> AtlasEntry:
    from .optimize import multistart

    p, i, s, a, optimize, n_starts, seed = args
    entry = AtlasEntry(p, i, s, max_cut_brute(s), edge_expectation(s, a))
    if optimize and p >= 1:
        res = multistart(s, n_starts=n_starts, seed=seed + i)
        entry.f_opt, entry.opt_angles = res.best_value, res.best_angles
        if entry.f_opt < entry.f_fixed:  # the fixed point is itself a valid start
            entry.f_opt, entry.opt_angles = entry.f_fixed, a.reduced()
    elif p == 0:
        entry.f_opt, entry.opt_angles = entry.f_fixed, a
    return entry


def build_entries(p: int, optimize: bool = True, n_starts: int = 25, seed: int = 0,
                  angles: Angles | None = None, progress=None, threads: int = 1) -> list[AtlasEntry]:
    """Enumerate depth-``p`` classes and attach c_max, f_fixed and (optionally)
    the multistart optimum.  Class i uses seed ``seed + i``, so results do not
    depend on ``threads``."""
    from .parallel import ordered_map

    a = fixed_angles(p) if angles is None else angles
    jobs = [(p, i, s, a, optimize, n_starts, seed) for i, s in enumerate(enumerate_subgraphs(p))]
    out = []
    for entry in ordered_map(_make_entry, jobs, threads):
        out.append(entry)
        if progress is not None:
            progress(entry.index, entry)
    return out


def match_reference(entries: Sequence[AtlasEntry], rows: Sequence[tuple]) -> list[tuple[int, int, float]]:
    """Assign published row indices to entries.

    Rows and entries must agree exactly on the MAXCUT fraction; among those,
    the assignment minimizing total |f_fixed - f| + |f_opt - f'| is chosen.
    Returns (entry index, row index, cost) triples.
    """
    from scipy.optimize import linear_sum_assignment

    big = 1e6
    cost = np.full((len(entries), len(rows)), big)
    for i, e in enumerate(entries):
        for j, r in enumerate(rows):
            _, _, cut, total, f, f_opt, _, _ = r
            if (e.c_max.best_cut, e.c_max.total_edges) == (cut, total):
                f_opt = f if f_opt is None else f_opt
                other = e.f_fixed if e.f_opt is None else e.f_opt
                cost[i, j] = abs(e.f_fixed - f) + abs(other - f_opt)
    ri, cj = linear_sum_assignment(cost)
    return [(int(i), int(rows[j][1]), float(cost[i, j])) for i, j in zip(ri, cj) if cost[i, j] < big]


# ---------------------------------------------------------------- persistence

def _checksum(records: Iterable[dict]) -> str:
    h = hashlib.sha256()
    for r in records:
        h.update(json.dumps(r, sort_keys=True).encode())
    return h.hexdigest()


class AtlasFormatError(ValueError):
    """Atlas file is corrupt, truncated or from an unsupported version."""


def save_atlas(entries: Sequence[AtlasEntry], path: str | Path,
               fixed: Angles | None = None) -> None:
    """Write entries as a versioned JSON document with a whole-file checksum."""
    entries = sorted(entries, key=lambda e: (e.p, e.index))
    depths = {e.p for e in entries}
    if len(depths) > 1:
        raise ValueError("entries from several depths")
    recs = [e.to_record() for e in entries]
    doc = {
        "magic": ATLAS_MAGIC,
        "format_version": ATLAS_FORMAT_VERSION,
        "p": depths.pop() if depths else None,
        "class_count": len(recs),
        "fixed_angles_deg": None if fixed is None else [float(x) for x in fixed.degrees()],
        "records": recs,
        "checksum": _checksum(recs),
    }
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=1))
    tmp.replace(path)


def load_atlas(path: str | Path) -> list[AtlasEntry]:
    try:
        doc = json.loads(Path(path).read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise AtlasFormatError(f"unreadable atlas: {exc}") from None
    if not isinstance(doc, dict) or doc.get("magic") != ATLAS_MAGIC:
        raise AtlasFormatError("not an atlas file (bad magic)")
    if doc.get("format_version") != ATLAS_FORMAT_VERSION:
        raise AtlasFormatError(f"unsupported atlas version {doc.get('format_version')}")
    recs = doc.get("records")
    if not isinstance(recs, list) or len(recs) != doc.get("class_count"):
        raise AtlasFormatError("class count mismatch")
    if _checksum(recs) != doc.get("checksum"):
        raise AtlasFormatError("checksum mismatch")
    return [AtlasEntry.from_record(r) for r in recs]
