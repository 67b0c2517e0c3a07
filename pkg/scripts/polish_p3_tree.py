"""Polish the depth-3 tree angles from the published integer-degree point."""
import argparse
import time

from qaoa_bounds.qaoa import fixed_angles
from qaoa_bounds.tree_sym import polish_tree_angles, tree_edge_expectation


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gtol", type=float, default=1e-7)
    args = ap.parse_args()
    start = fixed_angles(3)
    t0 = time.time()
    print(f"start  {tree_edge_expectation(3, start):.6f} at {[round(float(x), 4) for x in start.degrees()]}")
    angles, value = polish_tree_angles(3, start, gtol=args.gtol)
    print(f"polish {value:.6f} at {[round(float(x), 8) for x in angles.degrees()]} ({time.time() - t0:.0f} s)")


if __name__ == "__main__":
    main()
