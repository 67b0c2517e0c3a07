"""Depth-2 environment search with a resumable checkpoint.

Run shards in separate processes (``--shard i/n``) and merge them with
``--merge``; the per-class counts are compared with the published column
using the reference pairing stored in results/atlas_p2.json.
"""
import argparse
import time
from pathlib import Path

from qaoa_bounds.atlas import load_atlas
from qaoa_bounds.env_search import merge_checkpoints, parse_shard, search_environments
from qaoa_bounds.reference import REFERENCE_ROWS, RELEVANT_ENVIRONMENTS

ROOT = Path(__file__).resolve().parents[1]


def compare(census, atlas_path: Path) -> None:
    published = {r[1]: r[6] for r in REFERENCE_ROWS if r[0] == 2}
    if not atlas_path.exists():
        print(f"{atlas_path} missing; run scripts/build_atlases.py for the per-class comparison")
        return
    pairing = {e.index: e.reference_index for e in load_atlas(atlas_path)}
    off = 0
    for k, n in sorted(census.per_class.items()):
        ref = published.get(pairing.get(k))
        if ref is not None and ref != n:
            off += 1
            print(f"class {k:3d} (published row {pairing[k]:3d}): {n} vs {ref} ({n - ref:+d})")
    print(f"{off} classes differ from the published column")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--checkpoint", type=Path, default=ROOT / "results" / "environments_p2.jsonl")
    ap.add_argument("--shard", type=parse_shard)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--fresh", action="store_true", help="ignore an existing checkpoint")
    ap.add_argument("--merge", type=Path, nargs="+")
    ap.add_argument("--atlas", type=Path, default=ROOT / "results" / "atlas_p2.json")
    args = ap.parse_args()
    if args.merge:
        census = merge_checkpoints(args.merge)
    else:
        t0 = time.time()

        def progress(r):
            print(f"class {r.center_class:3d}: {len(r.environments):4d} environments, "
                  f"{r.states:6d} states, {r.seconds:6.1f} s (total {time.time() - t0:.0f} s)", flush=True)

        census = search_environments(shard=args.shard, checkpoint=args.checkpoint,
                                     resume=not args.fresh, threads=args.threads, progress=progress)
    delta = census.relevant_count - RELEVANT_ENVIRONMENTS[2]
    print(f"relevant environments {census.relevant_count} (published {RELEVANT_ENVIRONMENTS[2]}, "
          f"delta {delta:+d}); closed-host environments left out: {census.closed_excluded}")
    compare(census, args.atlas)


if __name__ == "__main__":
    main()
