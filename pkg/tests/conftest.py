import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from tilecode.encoder import helix_trace
from tilecode.lattice import Monomial, OrderedSimplex
from tilecode.pdbio import THREE_TO_ONE, AtomRecord

AXIS_TRIPLES = list(itertools.permutations(range(1, 5), 3))
AXIS_PAIRS = list(itertools.permutations(range(1, 4), 2))

SYNTHETIC_SEQUENCE = "MISDEQLNSLAITFGIVMMTLIVIYHAVDSTMSPKN"
SYNTHETIC_HELIX = range(6, 28)  # 0-based residue indices built as ideal helix


def monomials(dim, lo=-6, hi=6):
    return st.tuples(*[st.integers(lo, hi)] * dim).map(Monomial)


def simplices(dim=4):
    axes = AXIS_TRIPLES if dim == 4 else AXIS_PAIRS
    return st.builds(OrderedSimplex, monomials(dim), st.sampled_from(axes))


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_fragment(rng):
    """Five points with bond lengths near 3.8 and random bond directions."""
    steps = rng.normal(size=(4, 3))
    steps *= rng.uniform(3.0, 4.2, size=(4, 1)) / np.linalg.norm(steps, axis=1, keepdims=True)
    return np.vstack([np.zeros(3), np.cumsum(steps, axis=0)]) + rng.normal(scale=10.0, size=3)


def _strand(start, direction, n, rng):
    d = direction / np.linalg.norm(direction)
    e = np.cross(d, rng.normal(size=3))
    e /= np.linalg.norm(e)
    return np.array([start + (k + 1) * 3.3 * d + (0.95 if k % 2 == 0 else -0.95) * e for k in range(n)])


def synthetic_trace():
    """36 C-alpha positions: 6 strand residues, a 22-residue helix, 8 strand residues."""
    rng = np.random.default_rng(7)
    helix = helix_trace(len(SYNTHETIC_HELIX))
    before = _strand(helix[0], np.array([0.3, 0.2, -1.0]), 6, rng)[::-1]
    after = _strand(helix[-1], np.array([-0.2, 0.4, 1.0]), 8, rng)
    return np.vstack([before, helix, after])


def pdb_text(coords, sequence, chain="A", start=1, extra=()):
    three = {v: k for k, v in THREE_TO_ONE.items()}
    lines, serial = [], 1
    for k, (xyz, aa) in enumerate(zip(coords, sequence)):
        for name, off in (("N", -1.0), ("CA", 0.0), ("C", 1.0)):
            x, y, z = (float(c) for c in xyz + np.array([off * 0.5, 0.0, 0.0]))
            lines.append(AtomRecord(serial, name, "", three[aa], chain, start + k, "", x, y, z).to_line())
            serial += 1
    lines.extend(extra)
    return "\n".join(lines) + "\nEND\n"


@pytest.fixture
def synthetic_pdb(tmp_path):
    path = tmp_path / "synthetic.pdb"
    path.write_text(pdb_text(synthetic_trace(), SYNTHETIC_SEQUENCE))
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def report(number: int, ok: bool, detail: str) -> None:
    """Record one acceptance result; the terminal summary prints them all."""
    ACCEPTANCE[number] = (bool(ok), detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
