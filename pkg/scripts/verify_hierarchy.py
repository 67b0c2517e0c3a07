"""Check the replacement clauses on every relevant environment (p=1 exhaustive,
p=2 from a finished search checkpoint)."""
import argparse
from pathlib import Path

from qaoa_bounds.atlas import Atlas
from qaoa_bounds.bounds import ClassValues
from qaoa_bounds.env_search import census_from_results, read_checkpoint
from qaoa_bounds.hierarchy import verify_census, verify_hierarchy
from qaoa_bounds.qaoa import fixed_angles

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--checkpoint", type=Path, default=ROOT / "results" / "environments_p2.jsonl")
    args = ap.parse_args()
    print("p=1:", verify_hierarchy(1).summary())
    atlas = Atlas.build(2)
    done = read_checkpoint(args.checkpoint, 2, fixed_angles(2))
    if len(done) < len(atlas):
        print(f"p=2: checkpoint has {len(done)}/{len(atlas)} classes; run scripts/sweep_environments.py")
        return
    report = verify_census(census_from_results(2, done.values()), ClassValues(atlas, fixed_angles(2)))
    print("p=2 clause counts (A, B):", report.clause_counts)
    print("p=2:", report.summary())
    for line in report.failures[:20]:
        print("  ", line)


if __name__ == "__main__":
    main()
