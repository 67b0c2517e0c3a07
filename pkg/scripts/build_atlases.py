"""Build the depth-1 and depth-2 atlases (with multistart optima) into results/."""
import argparse
import time
from pathlib import Path

from qaoa_bounds.atlas import build_entries, match_reference, save_atlas
from qaoa_bounds.reference import REFERENCE_ROWS

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--starts", type=int, default=25)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=ROOT / "results")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for p in args.p:
        t0 = time.time()
        entries = build_entries(p, n_starts=args.starts, seed=args.seed, threads=args.threads)
        rows = [r for r in REFERENCE_ROWS if r[0] == p]
        for i, j, _ in match_reference(entries, rows):
            entries[i].reference_index = j
        path = args.out_dir / f"atlas_p{p}.json"
        save_atlas(entries, path)
        print(f"p={p}: {len(entries)} classes in {time.time() - t0:.0f} s -> {path}")


if __name__ == "__main__":
    main()
