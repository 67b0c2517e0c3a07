"""Edge-replacement gadgets, graph environments and the clause checks showing
that replacing short-cycle edges never raises the fixed-angle bound.

An environment is described by a host: the depth-2p neighborhood of a center
edge, which fixes the depth-p class of every edge within depth p of the
center.  Replacing the center edge by a high-girth gadget changes the classes
of some of those edges (the modified set S).  Everything the clause checks need
(f, c before; f', c' after) is read off the center's depth-p view with each
assigned edge marked by its before/after classes (unmodified edges unmarked),
plus the classes of the gadget edges, so that marked view is the environment
key.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .atlas import Atlas
from .bounds import ClassValues, fmt4
from .canon import canonical_key, colored_key
from .graph import CapacityError, Graph, GraphError, girth, minimum_cycle_basis, neighborhood_subgraph
from .graphs_lib import generalized_petersen
from .qaoa import Angles, fixed_angles

RATIO_MARGIN = 1e-12
MAX_HIERARCHY_DEPTH = 2
# Whether hosts with no open boundary (the whole graph, e.g. K4) count as
# environments.  The published depth-1 census leaves them out while the
# depth-2 per-class counts include them.
INCLUDE_CLOSED_HOSTS = {1: False, 2: True}


# ---------------------------------------------------------------- gadgets

@dataclass(frozen=True)
class ReplacementGadget:
    """Fragment spliced in place of one edge.

    ``graph`` holds the internal edges; ``attach`` are the two degree-2
    vertices that connect to the endpoints of the removed edge.
    """

    p: int
    graph: Graph
    attach: tuple[int, int]

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        """Edges added by a replacement, the two attachment edges included."""
        return self.graph.edge_count + 2


def make_gadget(p: int) -> ReplacementGadget:
    """p=1: K_{3,3} minus an edge (girth 4).  p=2: the Mobius-Kantor graph
    minus an edge (girth 6).  The two attachment vertices are far enough apart
    that every cycle through the replaced edge grows beyond 2p+1."""
    if p == 1:
        full = Graph(6, tuple((i, 3 + j) for i in range(3) for j in range(3)))
    elif p == 2:
        full = generalized_petersen(8, 3)
    else:
        raise CapacityError(f"no gadget for depth {p}")
    a, b = full.edges[0]
    g = Graph(full.vertex_count, tuple(e for e in full.edges if e != (a, b)))
    return ReplacementGadget(p, g, (a, b))


def replace_edge(g: Graph, e: Sequence[int], gadget: ReplacementGadget,
                 require_cubic: bool = False) -> Graph:
    """Remove ``e`` and splice the gadget between its endpoints.  Gadget
    vertices are appended after the existing ones."""
    u, v = int(e[0]), int(e[1])
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not in graph")
    if require_cubic and not g.is_cubic():
        raise GraphError("replacement expects a 3-regular graph")
    n = g.vertex_count
    a, b = gadget.attach
    edges = [x for x in g.edges if x != (min(u, v), max(u, v))]
    edges += [(n + x, n + y) for x, y in gadget.graph.edges]
    edges += [(u, n + a), (v, n + b)]
    return Graph(n + gadget.vertex_count, tuple(edges))


# ---------------------------------------------------------------- views

def view_edges(g: Graph, e: Sequence[int], p: int) -> set[tuple[int, int]]:
    """Edges of the depth-p neighborhood of ``e``, in ``g``'s labels."""
    u, v = int(e[0]), int(e[1])
    dist = {u: 0, v: 0}
    queue = deque([u, v])
    while queue:
        x = queue.popleft()
        if dist[x] >= p:
            continue
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                queue.append(w)
    out = {(min(u, v), max(u, v))}
    for x, d in dist.items():
        if d < p:
            for w in g.adjacency[x]:
                out.add((min(x, w), max(x, w)))
    return out


def _rooted(edges: Iterable[tuple[int, int]], center: tuple[int, int]) -> tuple[Graph, dict[int, int]]:
    """Relabel an edge set so the center becomes (0, 1); others in BFS order."""
    adj = defaultdict(list)
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    order = list(center)
    label = {center[0]: 0, center[1]: 1}
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for w in sorted(adj[x]):
            if w not in label:
                label[w] = len(label)
                queue.append(w)
    return Graph(len(label), tuple((label[x], label[y]) for x, y in edges)), label


# ---------------------------------------------------------------- environments

@dataclass
class EnvironmentRecord:
    """A center edge in its host with before/after replacement data."""

    p: int
    host: Graph                          # center is (0, 1)
    center_class: int
    assignment: dict[tuple[int, int], int]
    modified: tuple[tuple[int, int], ...]
    after: dict[tuple[int, int], int]    # classes of modified edges after replacement
    gadget_classes: tuple[int, ...]
    f: float
    c: Fraction
    f_after: float
    c_after: Fraction
    key: bytes                           # center view marked with the modification pattern
    view_key: bytes                      # center view with class labels (empty in lazy mode)
    h_key: bytes                         # union of the views of center and modified edges (same)
    closed: bool                         # host has no open boundary

    @property
    def relevant(self) -> bool:
        """Replacement changes at least one neighbor's class."""
        return bool(self.modified)

    @property
    def ratio(self) -> float:
        return self.f / float(self.c)

    @property
    def delta_ratio(self) -> float | None:
        dc = self.c_after - self.c
        return None if dc == 0 else (self.f_after - self.f) / float(dc)


def classify_in(g: Graph, e: tuple[int, int], atlas: Atlas) -> int:
    return atlas.classify(neighborhood_subgraph(g, e, atlas.depth))


def classify_gadget_edges(host: Graph, atlas: Atlas, gadget: ReplacementGadget) -> tuple[int, ...]:
    """Classes of the spliced-in edges.  Their views reach only vertices within
    distance p of the center, so the center's class alone fixes them."""
    replaced = replace_edge(host, (0, 1), gadget)
    n = host.vertex_count
    return tuple(classify_in(replaced, e, atlas) for e in replaced.edges if max(e) >= n)


def analyze_host(host: Graph, atlas: Atlas, values: ClassValues,
                 gadget: ReplacementGadget,
                 modified_edges: Iterable[tuple[int, int]] | None = None,
                 gadget_classes: tuple[int, ...] | None = None) -> EnvironmentRecord:
    """Classify, replace the center edge, reclassify and collect f, c, f', c'.

    With ``modified_edges`` given (a partial host from the lazy search), only
    those edges are classified; the views of the others may be incomplete, and
    the diagnostic ``view_key`` / ``h_key`` are left empty.
    """
    p = atlas.depth
    center = (0, 1)
    assigned = sorted(view_edges(host, center, p) - {center})
    center_class = classify_in(host, center, atlas)
    replaced = replace_edge(host, center, gadget)
    if modified_edges is None:
        before = {e: classify_in(host, e, atlas) for e in assigned}
        after_all = {e: classify_in(replaced, e, atlas) for e in assigned}
        modified = tuple(e for e in assigned if after_all[e] != before[e])
    else:
        modified = tuple(sorted(modified_edges))
        before = {e: -1 for e in assigned}
        after_all = dict(before)
        for e in modified:
            before[e] = classify_in(host, e, atlas)
            after_all[e] = classify_in(replaced, e, atlas)
            if before[e] == after_all[e]:
                raise GraphError(f"edge {e} has a center cycle in view but keeps its class")
    if gadget_classes is None:
        gadget_classes = classify_gadget_edges(host, atlas, gadget)
    f = values.f(center_class) + math.fsum(values.f(before[e]) for e in modified)
    c = values.c(center_class) + sum((values.c(before[e]) for e in modified), Fraction(0))
    f_after = math.fsum(values.f(after_all[e]) for e in modified) \
        + math.fsum(values.f(k) for k in gadget_classes)
    c_after = sum((values.c(after_all[e]) for e in modified), Fraction(0)) \
        + sum((values.c(k) for k in gadget_classes), Fraction(0))
    view, label = _rooted(sorted(view_edges(host, center, p)), center)
    inv = {v: k for k, v in label.items()}
    colors, marks = [], []
    mod = set(modified)
    width = len(atlas) + 1
    for x, y in view.edges:
        e = (min(inv[x], inv[y]), max(inv[x], inv[y]))
        colors.append(center_class if e == center else before[e])
        if e == center:
            marks.append(0)
        elif e in mod:
            marks.append(1 + before[e] * width + after_all[e])
        else:
            marks.append(1 + width * width)
    key = colored_key(view, marks) + repr(sorted(gadget_classes)).encode()
    view_key = h_key = b""
    if modified_edges is None:
        h_edges = set()
        for e in (center,) + modified:
            h_edges |= view_edges(host, e, p)
        view_key = colored_key(view, colors)
        h_key = canonical_key(_rooted(sorted(h_edges), center)[0])
    return EnvironmentRecord(
        p, host, center_class, before, modified, {e: after_all[e] for e in modified},
        gadget_classes, f, c, f_after, c_after, key, view_key, h_key, host.is_cubic())


@dataclass
class EnvironmentCensus:
    """Environments found from a set of hosts."""

    p: int
    records: list[EnvironmentRecord]                     # one per relevant environment
    views: dict[bytes, EnvironmentRecord]                # one per labeled center view
    per_class: dict[int, int]                            # relevant environments per center class
    closed_excluded: int
    h_count: int = 0                                     # distinct unions of views

    @property
    def relevant_count(self) -> int:
        return len(self.records)

    @property
    def total_views(self) -> int:
        return len(self.views)


def _census(p: int, hosts: Iterable[Graph], atlas: Atlas, values: ClassValues,
            include_closed: bool) -> EnvironmentCensus:
    gadget = make_gadget(p)
    by_key: dict[bytes, EnvironmentRecord] = {}
    views: dict[bytes, EnvironmentRecord] = {}
    h_keys: set[bytes] = set()
    closed = 0
    for host in hosts:
        rec = analyze_host(host, atlas, values, gadget)
        if rec.closed and not include_closed:
            closed += 1
            continue
        by_key.setdefault(rec.key, rec)
        views.setdefault(rec.view_key, rec)
        h_keys.add(rec.h_key)
    records = sorted(by_key.values(), key=lambda r: (r.center_class, r.key))
    per_class = dict(sorted(Counter(r.center_class for r in records).items()))
    return EnvironmentCensus(p, records, views, per_class, closed, len(h_keys))


def enumerate_environments(p: int, relevant_only: bool = True, include_closed: bool | None = None,
                           angles: Angles | None = None, atlas: Atlas | None = None,
                           host_atlas: Atlas | None = None) -> EnvironmentCensus:
    """Depth-1 environments from every depth-2 neighborhood class as host.

    Closed hosts (a whole graph within distance 2 of the center, e.g. K4) are
    excluded by default: they are complete graphs in their own right rather
    than surroundings of an edge inside a larger graph.
    Depth 2 needs the seeded search in ``env_search``.
    """
    if p == 2:
        if not relevant_only:
            raise CapacityError("enumerating all depth-2 environments is infeasible; use relevant_only")
        from .env_search import search_environments
        return search_environments(angles=angles, include_closed=include_closed)
    if p != 1:
        raise CapacityError(f"environments are supported for p=1 (and p=2 via search), not {p}")
    atlas = atlas or Atlas.build(1)
    host_atlas = host_atlas or Atlas.build(2)
    values = ClassValues(atlas, angles or fixed_angles(1))
    hosts = [s.graph for s in host_atlas.classes]
    if include_closed is None:
        include_closed = INCLUDE_CLOSED_HOSTS[1]
    return _census(1, hosts, atlas, values, include_closed)


# ---------------------------------------------------------------- clauses

@dataclass(frozen=True)
class ClauseResult:
    A: bool
    B: bool
    C: bool
    degenerate: bool = False   # c' == c, B compared as f/c >= f'/c'


def check_clauses(env: EnvironmentRecord, rest_ratio: float) -> ClauseResult:
    """Evaluate the three clauses for an environment inside a graph whose
    remaining edges have ratio ``rest_ratio`` = F/C.

    A: F/C <= f/c.   B: f/c >= (f'-f)/(c'-c).
    C: replacement does not raise the bound, i.e. (F+f)/(C+c) >= (f'-f)/(c'-c)
       for every split of the graph with that F/C.  Since (F+f)/(C+c) sweeps the
       interval between F/C and f/c as C varies, this is
       min(F/C, f/c) >= (f'-f)/(c'-c).
    """
    local = env.ratio
    a = rest_ratio <= local + RATIO_MARGIN
    dc = env.c_after - env.c
    if dc == 0:
        b = local >= env.f_after / float(env.c_after) - RATIO_MARGIN
        c_ok = env.f_after <= env.f + RATIO_MARGIN
        return ClauseResult(a, b, c_ok, degenerate=True)
    slope = (env.f_after - env.f) / float(dc)
    if dc < 0:
        # removing cut capacity: the bound drops iff the lost f per lost c is at least R
        b = local <= slope + RATIO_MARGIN
        c_ok = max(rest_ratio, local) <= slope + RATIO_MARGIN
        return ClauseResult(a, b, c_ok)
    b = local >= slope - RATIO_MARGIN
    c_ok = min(rest_ratio, local) >= slope - RATIO_MARGIN
    return ClauseResult(a, b, c_ok)


def implication_counterexample() -> tuple[float, float, float, float, float, float] | None:
    """(F, C, f, c, f', c') with A and B true but C false, showing the clauses
    as stated need the reverse inequality in A; None if none is found."""
    F, C, f, c, fp, cp = 5.0, 10.0, 0.9, 1.0, 8.9, 11.0
    a = F / C <= f / c
    b = f / c >= (fp - f) / (cp - c)
    r = (F + f) / (C + c)
    return (F, C, f, c, fp, cp) if a and b and not r >= (fp - f) / (cp - c) else None


@dataclass
class HierarchyReport:
    p: int
    environment_count: int
    total_views: int
    per_class: dict[int, int]
    clause_counts: dict[tuple[bool, bool], int]
    failures: list[str]
    bound: float
    records: list[EnvironmentRecord] = field(repr=False, default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.environment_count - len(self.failures)}/{self.environment_count} "
                f"environments, bound {fmt4(self.bound)}")


def verify_census(census: EnvironmentCensus, values: ClassValues, tree_class: int = 0) -> HierarchyReport:
    """Check every environment: B must hold whenever A does (taking the rest
    of the graph at the tree ratio), and no environment may have A false and
    B true.  Environments with both false are allowed: their edge is simply
    not one the reduction would pick."""
    rho = values.f(tree_class) / float(values.c(tree_class))
    counts: Counter = Counter()
    failures = []
    for rec in census.records:
        res = check_clauses(rec, rho)
        counts[(res.A, res.B)] += 1
        if res.A != res.B:
            failures.append(f"class {rec.center_class} key {rec.key.hex()[:16]}: A={res.A} B={res.B}")
    return HierarchyReport(census.p, census.relevant_count, census.total_views, census.per_class,
                           dict(counts), failures, rho, census.records)


def verify_hierarchy(p: int, angles: Angles | None = None, **search_opts) -> HierarchyReport:
    if p > MAX_HIERARCHY_DEPTH:
        raise CapacityError(f"depth {p}: about 10^6 neighborhood classes and far more "
                            "environments; out of reach")
    if p < 1:
        raise ValueError("p must be >= 1")
    a = angles or fixed_angles(p)
    atlas = Atlas.build(p)
    values = ClassValues(atlas, a)
    if p == 1:
        census = enumerate_environments(1, angles=a, atlas=atlas)
    else:
        from .env_search import search_environments
        census = search_environments(angles=a, atlas=atlas, values=values, **search_opts)
    return verify_census(census, values)


def host_cycle_check(host: Graph, p: int) -> bool:
    """Minimum cycle basis of the host uses only cycles of length <= 2p+1."""
    return all(len(cyc) <= 2 * p + 1 for cyc in minimum_cycle_basis(host))


def gadget_girth(gadget: ReplacementGadget) -> float:
    return girth(gadget.graph)
