"""Command-line entry point.

Every flag can also be set through an environment variable named
``QAOA_BOUNDS_<FLAG>`` (e.g. ``QAOA_BOUNDS_THREADS=4``); explicit flags win.
Angles are given and printed in degrees, interleaved as gamma_1,beta_1,...
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .atlas import Atlas, AtlasFormatError, build_entries, load_atlas, save_atlas
from .bounds import (ClassValues, bipartition_witness, build_qgon_tilings, fmt4,
                     lower_bound_fixed_angles, plot_csv, upper_bound_cmin)
from .graph import CapacityError, Graph, GraphError, neighborhood_subgraph, read_graph
from .graphs_lib import NAMED_GRAPHS
from .parallel import default_threads
from .qaoa import Angles, edge_expectation, fixed_angles, parse_angles_deg

ENV_PREFIX = "QAOA_BOUNDS_"
COMMANDS = ("atlas", "bound", "optimize", "verify-hierarchy", "upper-bound", "plotdata", "tilings")
P_RANGE = {
    "atlas": (0, 2), "bound": (1, 2), "optimize": (1, 3), "verify-hierarchy": (1, 2),
    "upper-bound": (1, 10**6), "plotdata": (1, 3), "tilings": (1, 2),
}
# depth used when --p is absent; plotdata covers every depth with a stored tree optimum
DEFAULT_P = {"plotdata": 3}


@dataclass
class RunConfig:
    command: str
    p: int
    graph: str | None = None
    atlas: str | None = None
    out: str | None = None
    angles: Angles | None = None
    seed: int = 0
    threads: int = 1
    shard: tuple[int, int] | None = None
    resume: bool = False
    subgraph: int = 0
    starts: int = 25
    mesh: int | None = None
    merge: tuple[str, ...] = ()

    def validate(self) -> None:
        lo, hi = P_RANGE[self.command]
        if not lo <= self.p <= hi:
            raise ValueError(f"{self.command}: p must be in [{lo}, {hi}], got {self.p}")
        if self.angles is not None and self.angles.p != self.p:
            raise ValueError(f"--angles has {self.angles.p} layers but --p is {self.p}")
        if self.threads < 1:
            raise ValueError("--threads must be >= 1")
        if self.graph is not None and self.graph not in NAMED_GRAPHS and not Path(self.graph).is_file():
            raise ValueError(f"graph {self.graph!r} is neither a file nor one of {sorted(NAMED_GRAPHS)}")
        if self.atlas is not None and not Path(self.atlas).is_file():
            raise ValueError(f"atlas file {self.atlas!r} not found")
        for m in self.merge:
            if not Path(m).is_file():
                raise ValueError(f"checkpoint {m!r} not found")
        if self.out is not None:
            parent = Path(self.out).resolve().parent
            if not parent.is_dir():
                raise ValueError(f"output directory {parent} does not exist")


def _env_default(name: str, cast=str, default=None):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    if cast is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return cast(raw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qaoa-bounds", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("graph", nargs="?", help="graph file (edge list) or a named graph, for 'bound'")
    ap.add_argument("--p", type=int, default=_env_default("p", int, None),
                    help="QAOA depth (default 1; plotdata lists p = 1..3)")
    ap.add_argument("--angles", default=_env_default("angles"),
                    help="interleaved gamma,beta,... in degrees (default: fixed angles)")
    ap.add_argument("--seed", type=int, default=_env_default("seed", int, 0))
    ap.add_argument("--threads", type=int, default=_env_default("threads", int, default_threads()),
                    help="worker processes; 1 runs serially")
    ap.add_argument("--atlas", default=_env_default("atlas"), help="precomputed atlas file")
    ap.add_argument("--out", default=_env_default("out"), help="output file")
    ap.add_argument("--shard", default=_env_default("shard"), help="i/n: run every n-th class from i")
    ap.add_argument("--resume", action="store_true", default=_env_default("resume", bool, False))
    ap.add_argument("--subgraph", type=int, default=_env_default("subgraph", int, 0),
                    help="atlas index to optimize (0 is the tree)")
    ap.add_argument("--starts", type=int, default=_env_default("starts", int, 25))
    ap.add_argument("--mesh", type=int, default=_env_default("mesh", int, None),
                    help="ascend from a mesh of this density and list every maximum")
    ap.add_argument("--merge", nargs="+", default=(), help="shard checkpoints to combine")
    return ap


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    from .env_search import parse_shard

    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command, p=DEFAULT_P.get(ns.command, 1) if ns.p is None else ns.p, graph=ns.graph, atlas=ns.atlas, out=ns.out,
        angles=None if ns.angles is None else parse_angles_deg(ns.angles),
        seed=ns.seed, threads=ns.threads,
        shard=None if ns.shard is None else parse_shard(ns.shard),
        resume=ns.resume, subgraph=ns.subgraph, starts=ns.starts, mesh=ns.mesh,
        merge=tuple(ns.merge),
    )
    cfg.validate()
    return cfg


def _angles_str(a: Angles) -> str:
    return ", ".join(f"{x:.4f}" for x in a.degrees())


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_graph(spec: str) -> Graph:
    if spec in NAMED_GRAPHS and not Path(spec).is_file():
        return NAMED_GRAPHS[spec]()
    return read_graph(spec)


def _atlas_and_values(cfg: RunConfig, angles: Angles) -> tuple[Atlas, ClassValues]:
    if cfg.atlas is None:
        atlas = Atlas.build(cfg.p)
        return atlas, ClassValues(atlas, angles)
    entries = load_atlas(cfg.atlas)
    if not entries or entries[0].p != cfg.p:
        raise AtlasFormatError(f"{cfg.atlas}: atlas is not for p={cfg.p}")
    atlas = Atlas(cfg.p, [e.subgraph for e in entries])
    values = ClassValues(atlas, angles)
    for e in entries:
        values._c[e.index] = e.c
        if cfg.angles is None:
            values._f[e.index] = e.f_fixed
    return atlas, values


# ---------------------------------------------------------------- commands

def cmd_atlas(cfg: RunConfig) -> int:
    from .hierarchy import enumerate_environments
    from .atlas import match_reference
    from .reference import REFERENCE_ROWS

    angles = cfg.angles or fixed_angles(cfg.p)
    entries = build_entries(cfg.p, optimize=cfg.p >= 1, n_starts=cfg.starts, seed=cfg.seed,
                            angles=angles, threads=cfg.threads)
    rows = [r for r in REFERENCE_ROWS if r[0] == cfg.p]
    for i, j, _ in match_reference(entries, rows) if rows else []:
        entries[i].reference_index = j
    if cfg.p == 1:
        census = enumerate_environments(1, angles=angles)
        for e in entries:
            e.env_count = census.per_class.get(e.index, 0)
    out = cfg.out or f"atlas_p{cfg.p}.json"
    save_atlas(entries, out, fixed=angles)
    # list in published-table order when every class is paired
    paired = all(e.reference_index is not None for e in entries)
    for e in sorted(entries, key=lambda e: e.reference_index) if paired else entries:
        ref = f"  table {e.reference_index}" if paired else ""
        opt = "" if e.f_opt is None else f"  f_opt {fmt4(e.f_opt)}"
        print(f"[{cfg.p},{e.index}]{ref}  c_max {e.c_max}  f {fmt4(e.f_fixed)}{opt}")
    print(f"wrote {len(entries)} entries to {out}")
    return 0


def cmd_bound(cfg: RunConfig) -> int:
    if cfg.graph is None:
        raise ValueError("bound needs a graph file or name")
    g = _load_graph(cfg.graph)
    bad = g.deficient_vertex()
    if bad is not None:
        raise GraphError(f"{cfg.graph}: vertex {bad} has degree {g.degree(bad)}, expected 3")
    angles = cfg.angles or fixed_angles(cfg.p)
    atlas, values = _atlas_and_values(cfg, angles)
    rep = lower_bound_fixed_angles(g, atlas, angles, graph_id=Path(cfg.graph).name, values=values)
    if cfg.out:
        Path(cfg.out).write_text(rep.to_json() + "\n")
    print(f"graph {rep.graph_id}  p {rep.p}  edges {rep.counts.total}")
    print("counts " + " ".join(f"{k}:{n}" for k, n in rep.counts.counts.items()))
    print(f"angles (deg) {_angles_str(angles)}")
    print(f"lower bound {fmt4(rep.lower_bound)}")
    return 0


def cmd_optimize(cfg: RunConfig) -> int:
    from .optimize import find_all_maxima, multistart

    if cfg.p == 3:
        if cfg.subgraph != 0:
            raise CapacityError("p=3 optimization is only available for the tree (--subgraph 0)")
        from .tree_sym import polish_tree_angles
        start = cfg.angles or fixed_angles(3)
        a, v = polish_tree_angles(3, start)
        print(f"[3,0]  f {v:.6f}  angles (deg) {_angles_str(a.reduced())}")
        return 0
    atlas = Atlas.build(cfg.p)
    if not 0 <= cfg.subgraph < len(atlas):
        raise ValueError(f"--subgraph must be in [0, {len(atlas) - 1}]")
    s = atlas.classes[cfg.subgraph]
    if cfg.mesh is not None:
        maxima = find_all_maxima(s, cfg.mesh)
        for a, v in maxima:
            print(f"f {v:.6f}  angles (deg) {_angles_str(a.reduced())}")
        print(f"{len(maxima)} maxima")
        return 0
    res = multistart(s, n_starts=cfg.starts, seed=cfg.seed)
    print(f"[{cfg.p},{cfg.subgraph}]  f_opt {res.best_value:.6f}  angles (deg) "
          f"{_angles_str(res.best_angles.reduced())}")
    return 0


def cmd_verify_hierarchy(cfg: RunConfig) -> int:
    from .hierarchy import verify_census, verify_hierarchy
    from .reference import RELEVANT_ENVIRONMENTS

    angles = cfg.angles or fixed_angles(cfg.p)
    if cfg.p == 1:
        rep = verify_hierarchy(1, angles)
    else:
        from .env_search import merge_checkpoints, search_environments
        atlas = Atlas.build(2)
        values = ClassValues(atlas, angles)
        if cfg.merge:
            census = merge_checkpoints(cfg.merge)
        else:
            ckpt = cfg.out or "environments_p2.jsonl"
            census = search_environments(
                angles=angles, atlas=atlas, values=values, shard=cfg.shard, checkpoint=ckpt,
                resume=cfg.resume, threads=cfg.threads,
                progress=lambda r: print(f"class {r.center_class}: {len(r.environments)} environments, "
                                         f"{r.states} states, {r.seconds:.1f}s", flush=True))
        rep = verify_census(census, values)
        if cfg.shard is not None:
            print(f"shard {cfg.shard[0]}/{cfg.shard[1]}: {rep.environment_count} environments; "
                  "merge all shards with --merge for the full check")
    for k, n in rep.per_class.items():
        print(f"class {k}: {n}")
    for f in rep.failures:
        print("FAIL " + f)
    print(f"clauses (A, B): {dict(sorted(rep.clause_counts.items()))}")
    expected = RELEVANT_ENVIRONMENTS.get(cfg.p)
    if expected is not None and cfg.shard is None:
        delta = rep.environment_count - expected
        print(f"relevant environments {rep.environment_count} (published {expected}, delta {delta:+d})")
    print(rep.summary())
    return 0 if rep.passed else 1


def cmd_upper_bound(cfg: RunConfig) -> int:
    ub = upper_bound_cmin(cfg.p)
    print(f"{ub} ≈ {float(ub):.6f}")
    return 0


def tree_values(p_max: int) -> dict[int, float]:
    """Tree-class expectation at the tree-optimal angles for p = 1..p_max."""
    from .tree_sym import optimal_tree_angles, tree_edge_expectation

    return {p: tree_edge_expectation(p, optimal_tree_angles(p)) for p in range(1, p_max + 1)}


def cmd_plotdata(cfg: RunConfig) -> int:
    _emit(cfg, plot_csv(tree_values(cfg.p)).rstrip("\n"))
    return 0


def cmd_tilings(cfg: RunConfig) -> int:
    atlas = Atlas.build(cfg.p)
    angles = cfg.angles or fixed_angles(cfg.p)
    even, odd = build_qgon_tilings(cfg.p)
    report = {}
    for name, g in (("even", even), ("odd", odd)):
        from .atlas import count_subgraphs
        counts = count_subgraphs(g, atlas)
        vals = [edge_expectation(neighborhood_subgraph(g, e, cfg.p), angles) for e in g.edges]
        witness = bipartition_witness(g)
        report[name] = {"vertices": g.vertex_count, "edges": g.edge_count,
                        "classes": {str(k): n for k, n in counts.counts.items()},
                        "edge_expectation_min": min(vals), "edge_expectation_max": max(vals),
                        "bipartite": witness is not None}
        cut = f"max cut {g.edge_count}/{g.edge_count} (bipartite)" if witness else "not bipartite"
        print(f"{name}: {g.vertex_count} vertices, {g.edge_count} edges, classes {counts.counts}, "
              f"f in [{min(vals):.10f}, {max(vals):.10f}], {cut}")
    spread = max(report["even"]["edge_expectation_max"], report["odd"]["edge_expectation_max"]) \
        - min(report["even"]["edge_expectation_min"], report["odd"]["edge_expectation_min"])
    print(f"per-edge expectation spread {spread:.2e}; upper bound {upper_bound_cmin(cfg.p)}")
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(report, indent=1) + "\n")
    return 0


HANDLERS = {
    "atlas": cmd_atlas, "bound": cmd_bound, "optimize": cmd_optimize,
    "verify-hierarchy": cmd_verify_hierarchy, "upper-bound": cmd_upper_bound,
    "plotdata": cmd_plotdata, "tilings": cmd_tilings,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        return HANDLERS[cfg.command](cfg)
    except (GraphError, CapacityError, AtlasFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
