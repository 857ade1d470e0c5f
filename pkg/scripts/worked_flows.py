"""Trace the two worked flows (triangles and tetrahedra) and every start ordering.

Prints the trajectory of each example, then a survey of which starting
orderings at the first peak close and how long their cycles are.
"""

import argparse
import itertools
from pathlib import Path

from tilecode.flow import PeakSet, SmoothnessViolation, derivative_code, trace
from tilecode.lattice import OrderedSimplex, flat_class

DATA = Path(__file__).resolve().parents[1] / "data"
EXAMPLES = [("peaks_triangle.txt", 3, (1, 2)), ("peaks_tetra.txt", 4, (3, 4, 1))]


def show(peaks, axes, max_steps):
    start = OrderedSimplex(peaks.peaks[0], axes)
    traj = trace(peaks, flat_class(start), max_steps=max_steps)
    code = derivative_code(traj)
    for i, s in enumerate(traj.steps):
        print(f"  {i:3d}  {s.simplex!s:<22} {s.gradient.monomial_name:<8} {code[i]}")
    status = f"closed, length {len(traj)}" if traj.closed else f"truncated at {len(traj)}"
    print(f"  {status}: {code}")


def survey(peaks, max_steps):
    n = peaks.dim
    for axes in itertools.permutations(range(1, n + 1), n - 1):
        try:
            traj = trace(peaks, flat_class(OrderedSimplex(peaks.peaks[0], axes)), max_steps=max_steps)
        except SmoothnessViolation as exc:
            print(f"  {axes}: smoothness violated at step {exc.step}")
            continue
        state = f"closed {len(traj):3d}" if traj.closed else "truncated"
        print(f"  {axes}: {state}  {derivative_code(traj)[:40]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-steps", type=int, default=200)
    args = ap.parse_args()
    for name, dim, axes in EXAMPLES:
        peaks = PeakSet.parse((DATA / name).read_text(), dim=dim)
        print(f"{name} from {axes}")
        show(peaks, axes, args.max_steps)
        print("start orderings at the first peak")
        survey(peaks, args.max_steps)
        print()


if __name__ == "__main__":
    main()
