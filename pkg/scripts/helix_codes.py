"""Codes of ideal helices and strands across a grid of twist and rise values.

Shows how robust the constant helix letter is to the helix parameters, and
the letter histogram of random C-alpha fragments.
"""

import argparse
from collections import Counter

import numpy as np

from tilecode.encoder import EncoderConfig, encode_fragment, encode_points, helix_trace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=3000, help="number of random fragments")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = EncoderConfig()

    print("twist  rise  radius  interior codes")
    for twist in (90.0, 95.0, 100.0, 105.0, 110.0):
        for rise in (1.3, 1.5, 1.7):
            codes = encode_points(helix_trace(20, rise, twist, 2.3), cfg=cfg).codes[2:-2]
            print(f"{twist:5.0f}  {rise:4.1f}  {2.3:6.1f}  {codes}")

    k = np.arange(12)
    strand = np.column_stack([3.3 * k, 0.95 * (-1.0) ** k, np.zeros(12)])
    print("strand", encode_points(strand, cfg=cfg).codes)

    rng = np.random.default_rng(args.seed)
    counts = Counter()
    for _ in range(args.random):
        steps = rng.normal(size=(4, 3))
        steps *= 3.8 / np.linalg.norm(steps, axis=1, keepdims=True)
        frag = np.vstack([np.zeros(3), np.cumsum(steps, axis=0)])
        counts[encode_fragment(frag, cfg).letter] += 1
    print("random fragments:", " ".join(f"{c}:{n}" for c, n in sorted(counts.items())))


if __name__ == "__main__":
    main()
