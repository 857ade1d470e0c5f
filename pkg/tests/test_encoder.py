import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilecode.encoder import (
    DegenerateFragment,
    EncoderConfig,
    TileCode,
    bits_of,
    choose_branch,
    code_value,
    encode_chain,
    encode_fragment,
    encode_points,
    fold_fragment,
    helix_trace,
    initial_state,
    letter,
)
from tilecode.geometry import Branch, advance, bold_direction
from tilecode.lattice import gradient

from conftest import random_fragment, random_rotation

seeds = st.integers(0, 2**32 - 1)

# gradients of T[-2..2] forced by the derivative bits from the initial tetrahedron M
BITS_TO_GRADIENTS = {
    "DDDDD": "MMMMM", "DDDDU": "MMMML", "DDDUD": "MMMKN", "DDDUU": "MMMKK",
    "DUDDD": "KNMMM", "DUDDU": "KNMML", "DUDUD": "KNMKN", "DUDUU": "KNMKK",
    "UDDDD": "LMMMM", "UDDDU": "LMMML", "UDDUD": "LMMKN", "UDDUU": "LMMKK",
    "UUDDD": "NNMMM", "UUDDU": "NNMML", "UUDUD": "NNMKN", "UUDUU": "NNMKK",
}  # fmt: skip


def test_letters():
    assert letter("DDDUU") == "3"
    assert letter("DUDUD") == "A"
    assert letter("DDDDD") == "0"
    assert letter("UUUUU") == "V"
    assert TileCode("DUDUD").y == 10
    with pytest.raises(ValueError):
        code_value("DUD")
    with pytest.raises(ValueError):
        code_value("DUDUX")


@given(st.integers(0, 31))
def test_bits_roundtrip(y):
    assert code_value(bits_of(y)) == y
    assert letter(bits_of(y)) == "0123456789ABCDEFGHIJKLMNOPQRSTUV"[y]


def test_config_validation():
    with pytest.raises(ValueError):
        EncoderConfig(scale=-1.0)
    with pytest.raises(ValueError):
        EncoderConfig(initial_axes=(1, 1, 2))
    assert EncoderConfig(tie_break="switch").tie_break is Branch.SWITCH


@settings(max_examples=200)
@given(seeds)
def test_center_bit_and_gradient_table(seed):
    code = encode_fragment(random_fragment(np.random.default_rng(seed)))
    assert code.bits[2] == "D"
    assert code.gradients == BITS_TO_GRADIENTS[code.bits]


def test_worked_example_gradients():
    assert BITS_TO_GRADIENTS["UDDUD"] == "LMMKN"


@settings(max_examples=50)
@given(seeds)
def test_rigid_motion_invariance(seed):
    rng = np.random.default_rng(seed)
    frag = random_fragment(rng)
    moved = frag @ random_rotation(rng).T + rng.normal(scale=50, size=3)
    assert encode_fragment(frag) == encode_fragment(moved)


@settings(max_examples=50)
@given(seeds, st.floats(0.5, 3.0))
def test_similarity_invariance(seed, k):
    frag = random_fragment(np.random.default_rng(seed))
    assert encode_fragment(frag) == encode_fragment(k * frag, EncoderConfig(scale=3.8 * k))


def test_initial_orientation():
    frag = random_fragment(np.random.default_rng(3))
    t0 = initial_state(frag, EncoderConfig())
    assert np.allclose(t0.tetra.anchor(), frag[2])
    d = bold_direction(t0)
    u = frag[3] - frag[1]
    assert np.allclose(d / np.linalg.norm(d), u / np.linalg.norm(u))
    assert gradient(t0.tetra.lattice).letter == "M" and t0.derivative == "D"


@settings(max_examples=30)
@given(seeds)
def test_fold_anchors_on_fragment(seed):
    frag = random_fragment(np.random.default_rng(seed))
    fold = fold_fragment(frag)
    for tet, p in zip(fold.tetrahedra, frag):
        assert np.allclose(tet.anchor(), p, atol=1e-9)
    # T[+-1] bold edges point along AA[0] -> AA[+-2]
    for k, far in ((3, frag[4]), (1, frag[0])):
        d, w = bold_direction(fold.states[k]), far - frag[2]
        assert np.allclose(d / np.linalg.norm(d), w / np.linalg.norm(w), atol=1e-9)
    for tet in fold.tetrahedra:
        assert np.allclose(sorted(tet.edge_lengths()), sorted([3.8 * np.sqrt(3) / 2] * 4 + [3.8] * 2))


def test_branch_candidates_from_initial():
    t0 = initial_state(random_fragment(np.random.default_rng(0)), EncoderConfig())
    assert gradient(advance(t0, Branch.SWITCH).tetra.lattice).letter == "K"
    t1 = advance(t0, Branch.SWITCH)
    assert gradient(advance(t1, Branch.SWITCH).tetra.lattice).letter == "N"


def test_choose_branch_tie():
    t0 = initial_state(random_fragment(np.random.default_rng(1)), EncoderConfig())
    la = [advance(advance(t0, b), Branch.SAME).tetra.anchor() for b in Branch]
    mid = (la[0] + la[1]) / 2
    assert choose_branch(t0, mid, Branch.SAME) is Branch.SAME
    assert choose_branch(t0, mid, Branch.SWITCH) is Branch.SWITCH
    assert choose_branch(t0, la[1]) is Branch.SWITCH
    assert choose_branch(t0, la[0]) is Branch.SAME


def test_helix_constant_letter():
    enc = encode_points(helix_trace(20))
    interior = enc.codes[2:18]
    assert len(set(interior)) == 1
    assert interior[0] == "A"
    assert enc.codes[:2] == ".." and enc.codes[-2:] == ".."


def test_strand_code():
    k = np.arange(12)
    strand = np.column_stack([3.3 * k, 0.95 * (-1.0) ** k, np.zeros(12)])
    assert set(encode_points(strand).codes[2:-2]) == {"0"}


def test_short_chain_and_gaps():
    assert encode_points(helix_trace(4)).codes == "...."
    assert encode_points(np.zeros((0, 3))).codes == ""
    pts = helix_trace(12)
    breaks = [False] * 11
    breaks[5] = True  # between residues 5 and 6
    codes = encode_points(pts, breaks=breaks).codes
    assert codes == "..AA....AA.."
    assert all(c == "." for c in codes[4:8])
    with pytest.raises(ValueError):
        encode_points(pts, residues="AC")


def test_degenerate_fragment_is_padded():
    pts = helix_trace(7)
    pts[3] = pts[2]
    enc = encode_points(pts)
    assert enc.codes == "......." and enc.warnings
    with pytest.raises(DegenerateFragment):
        encode_fragment(np.zeros((5, 3)))
    with pytest.raises(ValueError):
        encode_fragment(np.zeros((4, 3)))


def test_encode_chain_from_pairs():
    pts = helix_trace(6)
    enc = encode_chain(zip("ACDEFG", pts))
    assert enc.sequence == "ACDEFG" and enc.codes == "..AA.."
    assert enc.records[2].as_dict()["bits"] == "DUDUD"
