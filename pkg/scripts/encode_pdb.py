"""Encode a PDB file and summarise letter runs per chain.

Without a file argument a synthetic 36-residue chain (strand, helix, strand)
is encoded instead.
"""

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from tilecode.cli import format_listing
from tilecode.encoder import encode_chain, encode_points, helix_trace
from tilecode.pdbio import read_pdb


def synthetic():
    rng = np.random.default_rng(7)
    helix = helix_trace(22)

    def strand(start, d, n):
        d = d / np.linalg.norm(d)
        e = np.cross(d, rng.normal(size=3))
        e /= np.linalg.norm(e)
        return np.array([start + (k + 1) * 3.3 * d + (0.95 if k % 2 == 0 else -0.95) * e for k in range(n)])

    pts = np.vstack([strand(helix[0], np.array([0.3, 0.2, -1.0]), 6)[::-1], helix, strand(helix[-1], np.array([-0.2, 0.4, 1.0]), 8)])
    return encode_points(pts, "MISDEQLNSLAITFGIVMMTLIVIYHAVDSTMSPKN")


def runs(codes, min_len=4):
    out, pos = [], 0
    for c, g in itertools.groupby(codes):
        n = len(list(g))
        if c != "." and n >= min_len:
            out.append(f"{c}x{n}@{pos + 1}")
        pos += n
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pdb", nargs="?")
    ap.add_argument("--min-run", type=int, default=4)
    args = ap.parse_args()
    if args.pdb:
        encodings = [(t.chain_id, encode_chain(t)) for t in read_pdb(Path(args.pdb))]
    else:
        encodings = [("synthetic", synthetic())]
    if not encodings:
        sys.exit("no chains")
    for chain, enc in encodings:
        print(f"> {chain}")
        print(format_listing(enc.sequence, enc.codes))
        print("runs:", ", ".join(runs(enc.codes, args.min_run)) or "none")


if __name__ == "__main__":
    main()
