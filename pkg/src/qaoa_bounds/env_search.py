"""Search for depth-2 relevant environments.

Full depth-4 hosts are far too many to list, so hosts are grown lazily from
each center class: a partial host is a graph of maximum degree 3 in which
vertices of degree < 3 are *open* (more edges may follow).  The search only
closes open vertices next to an assigned edge whose status is still unknown or
whose view is incomplete:

* An assigned edge is *modified* once the center lies on a cycle inside its
  view.  Views only grow as edges are added, so this is permanent.
* It is certainly *unmodified* once its view minus the center edge separates
  the two center endpoints and one of the two sides has no open vertex, so no
  later edge can reconnect them inside the view.
* A view is final once every vertex within distance 1 of the edge is closed.

Partial hosts are deduplicated by canonical key.  Terminal hosts yield an
environment key (center view marked with the modification pattern), the same
key the depth-1 census uses.
"""
from __future__ import annotations

import json
import time
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from functools import partial
from typing import Callable, Iterable, Sequence

from .atlas import Atlas
from .bounds import ClassValues
from .canon import nauty_key
from .graph import Graph
from .parallel import ordered_map
from .qaoa import Angles, fixed_angles

CHECKPOINT_VERSION = 2


def _edge_distances(g: Graph, e: tuple[int, int], limit: int) -> dict[int, int]:
    u, v = e
    dist = {u: 0, v: 0}
    queue = deque([u, v])
    while queue:
        x = queue.popleft()
        if dist[x] >= limit:
            continue
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def _view_adjacency(g: Graph, dist: dict[int, int], p: int) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {x: set() for x in dist}
    for x, d in dist.items():
        if d < p:
            for w in g.adjacency[x]:
                adj[x].add(w)
                adj[w].add(x)
    return adj


def _component(adj: dict[int, set[int]], start: int, banned: tuple[int, int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if {x, w} == set(banned):
                continue
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


UNDECIDED, MODIFIED, UNMODIFIED = 0, 1, 2


def edge_status(g: Graph, e: tuple[int, int], p: int = 2) -> tuple[int, list[int]]:
    """(status, open vertices within distance p-1 of ``e``)."""
    dist = _edge_distances(g, e, p)
    adj = _view_adjacency(g, dist, p)
    open_inner = [x for x, d in dist.items() if d < p and g.degree(x) < 3]
    side0 = _component(adj, 0, (0, 1))
    if 1 in side0:
        return MODIFIED, open_inner
    if not open_inner:
        return UNMODIFIED, open_inner
    side1 = _component(adj, 1, (0, 1))
    open0 = any(g.degree(x) < 3 for x in side0)
    open1 = any(g.degree(x) < 3 for x in side1)
    if not open0 or not open1:
        return UNMODIFIED, open_inner
    return UNDECIDED, open_inner


def _children(g: Graph, v: int, skip=None) -> list[Graph]:
    """Add one edge at ``v``: to each open non-neighbor (unless ``skip(w)``) or
    to a new vertex."""
    out = []
    for w in range(g.vertex_count):
        if w != v and g.degree(w) < 3 and not g.has_edge(v, w) and not (skip and skip(w)):
            out.append(Graph(g.vertex_count, g.edges + ((min(v, w), max(v, w)),)))
    out.append(Graph(g.vertex_count + 1, g.edges + ((v, g.vertex_count),)))
    return out


def _invisible_join(g: Graph, v: int, w: int, center_dist: list[int],
                    inner_sets: list[set[int]], far: int) -> bool:
    """True when joining far vertex ``w`` to ``v`` can be replaced by a new vertex.

    ``w`` lies at distance >= ``far`` (= 2p) from the center and never enters a
    view's inner region, so a view sees it only through those of its neighbors
    that lie in the view's inner region.  Views of finished edges no longer
    change, so only unfinished edges count (``inner_sets``).  Putting ``v`` on
    a new vertex instead changes some view only if ``v`` shares an inner region
    with a neighbor of ``w``, or if a later open vertex could share one with
    both ``v`` and the single neighbor of ``w``.
    """
    if center_dist[w] < far:
        return False

    def linked(x, y):
        return any(x in s and y in s for s in inner_sets)

    nbrs = g.adjacency[w]
    if any(linked(v, q) for q in nbrs):
        return False
    if len(nbrs) == 1:
        q = nbrs[0]
        for y in range(g.vertex_count):
            if (y not in (v, q) and g.degree(y) < 3 and not g.has_edge(y, w)
                    and linked(y, v) and linked(y, q)):
                return False
    return True


@dataclass(frozen=True)
class EnvironmentSummary:
    """The numbers the clause checks need for one environment."""

    center_class: int
    key: bytes
    modified: int
    f: float
    c: Fraction
    f_after: float
    c_after: Fraction
    closed: bool = False     # only seen in hosts with no open boundary

    @property
    def ratio(self) -> float:
        return self.f / float(self.c)

    def to_record(self) -> dict:
        return {"key": self.key.hex(), "modified": self.modified, "f": self.f, "c": str(self.c),
                "f_after": self.f_after, "c_after": str(self.c_after), "closed": self.closed}

    @classmethod
    def from_record(cls, k: int, r: dict) -> "EnvironmentSummary":
        return cls(k, bytes.fromhex(r["key"]), r["modified"], r["f"], Fraction(r["c"]),
                   r["f_after"], Fraction(r["c_after"]), r["closed"])


@dataclass
class ClassResult:
    center_class: int
    environments: list[EnvironmentSummary]
    states: int
    seconds: float

    def to_record(self) -> dict:
        return {"class": self.center_class, "states": self.states, "seconds": round(self.seconds, 3),
                "envs": [e.to_record() for e in self.environments]}

    @classmethod
    def from_record(cls, r: dict) -> "ClassResult":
        k = r["class"]
        return cls(k, [EnvironmentSummary.from_record(k, e) for e in r["envs"]], r["states"], r["seconds"])


def search_class(k: int, atlas: Atlas, values: ClassValues, gadget,
                 state_limit: int | None = None, prune: bool = True) -> ClassResult:
    """All environments whose center edge is in class ``k``.

    Environments reached only through closed hosts (the whole graph lies
    within the search region, e.g. K4) are kept but flagged ``closed``.

    Needed vertices within distance p of the center are closed first.  After
    that, new vertices lie at distance >= 2p, and with ``prune`` joins to them
    that no view can tell apart from a new vertex are skipped
    (``_invisible_join``).
    """
    from .hierarchy import analyze_host, classify_gadget_edges

    t0 = time.time()
    p = atlas.depth
    start = atlas.classes[k].graph
    gadget_classes = classify_gadget_edges(start, atlas, gadget)
    seen = {nauty_key(start)}
    stack = [start]
    found: dict[bytes, EnvironmentSummary] = {}
    states = 0
    while stack:
        g = stack.pop()
        states += 1
        if state_limit is not None and states > state_limit:
            raise RuntimeError(f"class {k}: state limit {state_limit} exceeded")
        dist = g.distances_from((0, 1))
        assigned = [e for e in g.edges if e != (0, 1) and min(dist[e[0]], dist[e[1]]) < p]
        modified, needed, inner_sets = [], set(), []
        for e in assigned:
            status, open_inner = edge_status(g, e, p)
            if status == MODIFIED and not open_inner:
                modified.append(e)
            elif status != UNMODIFIED:
                needed.update(open_inner)
                if prune:
                    inner_sets.append({x for x, d in _edge_distances(g, e, 1).items() if d <= 1})
        if not needed:
            rec = analyze_host(g, atlas, values, gadget, modified, gadget_classes)
            closed = g.is_cubic()
            prev = found.get(rec.key)
            if prev is None or (prev.closed and not closed):
                found[rec.key] = EnvironmentSummary(
                    k, rec.key, len(rec.modified), rec.f, rec.c, rec.f_after, rec.c_after, closed)
            continue
        near = [x for x in needed if dist[x] <= p]
        target = min(near) if near else min(needed)
        skip = None
        if prune and not near:
            skip = partial(_invisible_join, g, target, center_dist=dist, inner_sets=inner_sets, far=2 * p)
        for child in _children(g, target, skip):
            ck = nauty_key(child)
            if ck not in seen:
                seen.add(ck)
                stack.append(child)
    envs = sorted(found.values(), key=lambda e: e.key)
    return ClassResult(k, envs, states, time.time() - t0)


def _search_job(k: int, atlas: Atlas, angles: Angles, state_limit: int | None) -> ClassResult:
    from .hierarchy import make_gadget

    values = ClassValues(atlas, angles)
    return search_class(k, atlas, values, make_gadget(atlas.depth), state_limit)


def parse_shard(text: str) -> tuple[int, int]:
    """'i/n' -> (i, n) with 0 <= i < n."""
    try:
        i, n = (int(x) for x in text.split("/"))
    except ValueError:
        raise ValueError(f"shard must look like i/n, got {text!r}") from None
    if n < 1 or not 0 <= i < n:
        raise ValueError(f"shard {text!r} out of range")
    return i, n


def _header(p: int, angles: Angles) -> dict:
    return {"format": "qaoa-bounds-envs", "version": CHECKPOINT_VERSION, "p": p,
            "angles_deg": [round(float(x), 10) for x in angles.degrees()]}


def read_checkpoint(path: str | Path, p: int | None = None,
                    angles: Angles | None = None) -> dict[int, ClassResult]:
    """Completed classes in a checkpoint; a truncated last line is ignored."""
    path = Path(path)
    if not path.exists():
        return {}
    lines = path.read_text().splitlines()
    if not lines:
        return {}
    head = json.loads(lines[0])
    if head.get("format") != "qaoa-bounds-envs" or head.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"{path}: not an environment checkpoint")
    if p is not None and head["p"] != p:
        raise ValueError(f"{path}: checkpoint is for p={head['p']}")
    if angles is not None and head["angles_deg"] != _header(p or head["p"], angles)["angles_deg"]:
        raise ValueError(f"{path}: checkpoint was made at different angles")
    out = {}
    for line in lines[1:]:
        try:
            r = ClassResult.from_record(json.loads(line))
        except (json.JSONDecodeError, KeyError):
            break
        out[r.center_class] = r
    return out


def search_environments(angles: Angles | None = None, atlas: Atlas | None = None,
                        values: ClassValues | None = None, classes: Sequence[int] | None = None,
                        shard: tuple[int, int] | None = None, checkpoint: str | Path | None = None,
                        resume: bool = False, state_limit: int | None = None,
                        include_closed: bool | None = None, threads: int = 1,
                        progress: Callable[[ClassResult], None] | None = None):
    """Relevant depth-2 environments for every center class (or a subset).

    With ``checkpoint`` each finished class is appended as one JSON line;
    ``resume`` skips classes already recorded there.  ``shard=(i, n)`` keeps
    the classes with index congruent to i mod n.
    """

    atlas = atlas or Atlas.build(2)
    p = atlas.depth
    angles = angles or fixed_angles(p)
    todo = list(range(len(atlas))) if classes is None else list(classes)
    if shard is not None:
        i, n = shard
        todo = [k for k in todo if k % n == i]
    done: dict[int, ClassResult] = {}
    if checkpoint is not None:
        path = Path(checkpoint)
        previous = read_checkpoint(path, p, angles) if resume else {}
        done = {k: r for k, r in previous.items() if k in todo}
        # rewrite from the valid lines so a torn final line cannot linger
        lines = [json.dumps(_header(p, angles))] + [json.dumps(r.to_record()) for r in previous.values()]
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)
    if threads == 1:
        from .hierarchy import make_gadget

        values = values or ClassValues(atlas, angles)
        gadget = make_gadget(p)
        job = partial(search_class, atlas=atlas, values=values, gadget=gadget,
                      state_limit=state_limit)
    else:
        job = partial(_search_job, atlas=atlas, angles=angles, state_limit=state_limit)
    for res in ordered_map(job, [k for k in todo if k not in done], threads):
        k = res.center_class
        done[k] = res
        if checkpoint is not None:
            with open(checkpoint, "a") as fh:
                fh.write(json.dumps(res.to_record()) + "\n")
        if progress is not None:
            progress(res)
    return census_from_results(p, done.values(), include_closed)


def census_from_results(p: int, results: Iterable[ClassResult], include_closed: bool | None = None):
    """Census over finished classes; ``include_closed`` defaults per depth
    (see ``hierarchy.INCLUDE_CLOSED_HOSTS``)."""
    from .hierarchy import INCLUDE_CLOSED_HOSTS, EnvironmentCensus

    if include_closed is None:
        include_closed = INCLUDE_CLOSED_HOSTS.get(p, True)
    records, closed = [], 0
    for r in sorted(results, key=lambda r: r.center_class):
        for e in r.environments:
            if e.closed and not include_closed:
                closed += 1
            else:
                records.append(e)
    per_class = dict(sorted(Counter(e.center_class for e in records).items()))
    return EnvironmentCensus(p, records, {}, per_class, closed)


def merge_checkpoints(paths: Iterable[str | Path], p: int = 2, include_closed: bool | None = None):
    """Combine shard checkpoints into one census."""
    merged: dict[int, ClassResult] = {}
    for path in paths:
        merged.update(read_checkpoint(path, p))
    return census_from_results(p, merged.values(), include_closed)
