"""5-tile codes: fold five tetrahedra onto a C-alpha fragment and read the derivative.

For the fragment AA[-2..2] the tetrahedra T[-2..2] are placed as follows.

1. T[0] is centred on AA[0] with its bold edge along AA[-1] -> AA[1] and its
   body turned towards AA[1].  Gradient from the config, derivative D.
2. Each of T[+1], T[-1] takes the branch whose following tetrahedron lands
   nearer AA[+2], AA[-2].
3. T[+-1] (carrying the candidate frame of T[+-2]) is translated onto AA[+-1].
4. T[+-1] is rotated about its centre so its bold edge points along AA[0] -> AA[+-2].
5. T[+-2] picks its branch against AA[+-2] in the same way.
6. T[+-2] is translated onto AA[+-2].

The code is the derivative of T[-2..2]; it always has D in the middle.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .flow import Direction
from .geometry import (
    DEFAULT_SCALE,
    Arm,
    Branch,
    EmbeddedTetra,
    FoldState,
    RigidTransform,
    advance,
    align_rotation,
    bold_direction,
    bold_edge,
)
from .lattice import Gradient, Monomial, OrderedSimplex, gradient

log = logging.getLogger(__name__)

TIE_TOL = 1e-9
PAD = "."


class DegenerateFragment(ValueError):
    pass


@dataclass(frozen=True)
class EncoderConfig:
    scale: float = DEFAULT_SCALE
    # T[0] = a[x1 x4 x2] (gradient M); this ordering reproduces the candidate
    # gradients of the worked folding example on both arms.
    initial_axes: tuple[int, int, int] = (1, 4, 2)
    tie_break: Branch = Branch.SAME

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        OrderedSimplex(Monomial.one(4), self.initial_axes)
        object.__setattr__(self, "tie_break", Branch(self.tie_break))


def code_value(bits: str) -> int:
    """Y = 16 C1' + 8 C2' + 4 C3' + 2 C4' + C5' with U -> 1, D -> 0."""
    if len(bits) != 5 or set(bits) - {"U", "D"}:
        raise ValueError(f"expected five U/D characters, got {bits!r}")
    y = 0
    for c in bits:
        y = 2 * y + (c == "U")
    return y


def letter(bits: str) -> str:
    """One-character name of a 5-tile code: 0-9 then A-V."""
    y = code_value(bits)
    return str(y) if y < 10 else string.ascii_uppercase[y - 10]


def bits_of(y: int) -> str:
    return "".join("U" if (y >> k) & 1 else "D" for k in range(4, -1, -1))


@dataclass(frozen=True)
class TileCode:
    bits: str
    gradients: str = ""

    @property
    def y(self) -> int:
        return code_value(self.bits)

    @property
    def letter(self) -> str:
        return letter(self.bits)

    def __str__(self) -> str:
        return self.letter


@dataclass
class Fold:
    """The five placed states T[-2..2] plus the resulting code."""

    states: list[FoldState]
    code: TileCode

    @property
    def tetrahedra(self) -> list[EmbeddedTetra]:
        return [s.tetra for s in self.states]


def as_fragment(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.shape != (5, 3):
        raise ValueError(f"a fragment is five 3-D points, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise DegenerateFragment("non-finite coordinates")
    if np.any(np.linalg.norm(np.diff(p, axis=0), axis=1) == 0.0):
        raise DegenerateFragment("coincident consecutive positions")
    return p


def _unit(v, what: str) -> np.ndarray:
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise DegenerateFragment(f"zero-length {what}")
    return v / n


def initial_state(frag: np.ndarray, cfg: EncoderConfig) -> FoldState:
    """Step 1: T[0] centred on AA[0] in the canonical orientation.

    The bold edge points along AA[-1] -> AA[1]; the tetrahedron is rolled about
    it so that its centre lies off the bold edge towards AA[1].
    """
    tet = EmbeddedTetra(OrderedSimplex(Monomial.one(4), cfg.initial_axes), scale=cfg.scale)
    state = FoldState(tet, "D", Direction.DOWN)
    local = tet.local_vertices()
    a, b = bold_edge(state)
    f = _unit(b - a, "bold edge")
    r = local.mean(axis=0) - (a + b) / 2
    r = _unit(r - (r @ f) * f, "roll reference")
    src = np.column_stack([f, r, np.cross(f, r)])

    u = _unit(frag[3] - frag[1], "AA[-1] -> AA[1] direction")
    w = frag[3] - frag[2]
    v = _unit(w - (w @ u) * u, "AA[0] -> AA[1] component across AA[-1] -> AA[1]")
    dst = np.column_stack([u, v, np.cross(u, v)])

    rot = dst @ src.T
    t = RigidTransform(rot, frag[2] - rot @ local.mean(axis=0))
    return FoldState(EmbeddedTetra(tet.lattice, t, cfg.scale), "D", Direction.DOWN)


def _look_ahead(s: FoldState) -> np.ndarray:
    return advance(s, Branch.SAME).tetra.anchor()


def choose_branch(state: FoldState, target, tie_break: Branch | str = Branch.SAME) -> Branch:
    """Branch for the tetrahedron after ``state`` whose own successor lands nearer ``target``."""
    target = np.asarray(target, dtype=float)
    d_same = np.linalg.norm(_look_ahead(advance(state, Branch.SAME)) - target)
    d_switch = np.linalg.norm(_look_ahead(advance(state, Branch.SWITCH)) - target)
    if abs(d_same - d_switch) <= TIE_TOL * max(1.0, d_same, d_switch):
        return Branch(tie_break)
    return Branch.SAME if d_same < d_switch else Branch.SWITCH


def _fold_arm(center: FoldState, frag: np.ndarray, sign: int, cfg: EncoderConfig) -> tuple[FoldState, FoldState]:
    near, far = frag[2 + sign], frag[2 + 2 * sign]
    arm = Arm.FORWARD if sign > 0 else Arm.BACKWARD
    start = center if sign > 0 else FoldState(center.tetra, center.derivative, Direction.UP, Arm.CENTER)

    # steps 2-4
    t1 = advance(start, choose_branch(start, far, cfg.tie_break), arm)
    t1 = t1.moved(RigidTransform.from_translation(near - t1.tetra.anchor()))
    target_dir = _unit(far - frag[2], "AA[0] -> AA[+-2] direction")
    rot = align_rotation(bold_direction(t1), target_dir).rotation
    t1 = t1.moved(RigidTransform.from_rotation(rot, near))

    # steps 5-6
    t2 = advance(t1, choose_branch(t1, far, cfg.tie_break))
    t2 = t2.moved(RigidTransform.from_translation(far - t2.tetra.anchor()))
    return t1, t2


def fold_fragment(points, cfg: EncoderConfig | None = None) -> Fold:
    cfg = cfg or EncoderConfig()
    frag = as_fragment(points)
    t0 = initial_state(frag, cfg)
    tp1, tp2 = _fold_arm(t0, frag, +1, cfg)
    tm1, tm2 = _fold_arm(t0, frag, -1, cfg)
    states = [tm2, tm1, t0, tp1, tp2]
    bits = "".join(s.derivative for s in states)
    grads = "".join(gradient(s.tetra.lattice).letter for s in states)
    return Fold(states, TileCode(bits, grads))


def encode_fragment(points, cfg: EncoderConfig | None = None) -> TileCode:
    return fold_fragment(points, cfg).code


@dataclass(frozen=True)
class ResidueRecord:
    index: int
    residue: str
    bits: str | None
    letter: str
    gradients: str | None
    padded: bool
    res_id: str = ""

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "res_id": self.res_id,
            "residue": self.residue,
            "bits": self.bits,
            "letter": self.letter,
            "gradients": self.gradients,
            "padded": self.padded,
        }


@dataclass
class ChainEncoding:
    records: list[ResidueRecord]
    warnings: list[str] = field(default_factory=list)

    @property
    def sequence(self) -> str:
        return "".join(r.residue for r in self.records)

    @property
    def codes(self) -> str:
        return "".join(r.letter for r in self.records)


def encode_points(
    points: Sequence,
    residues: str | None = None,
    breaks: Sequence[bool] | None = None,
    cfg: EncoderConfig | None = None,
    res_ids: Sequence[str] | None = None,
) -> ChainEncoding:
    """Encode every residue of a C-alpha trace.

    ``breaks[i]`` marks a chain break between residues i and i + 1; windows
    never span one.  Residues without a full window get '.'.
    """
    cfg = cfg or EncoderConfig()
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    n = len(pts)
    residues = residues if residues is not None else "X" * n
    breaks = list(breaks) if breaks is not None else [False] * max(n - 1, 0)
    res_ids = list(res_ids) if res_ids is not None else [str(i + 1) for i in range(n)]
    if len(residues) != n or len(breaks) != max(n - 1, 0) or len(res_ids) != n:
        raise ValueError("points, residues, breaks and res_ids disagree in length")

    out = ChainEncoding([])
    for i in range(n):
        lo, hi = i - 2, i + 2
        ok = lo >= 0 and hi < n and not any(breaks[lo:hi])
        if ok:
            try:
                code = encode_fragment(pts[lo : hi + 1], cfg)
            except DegenerateFragment as exc:
                msg = f"residue {res_ids[i]}: degenerate fragment ({exc})"
                log.warning(msg)
                out.warnings.append(msg)
            else:
                out.records.append(ResidueRecord(i, residues[i], code.bits, code.letter, code.gradients, False, res_ids[i]))
                continue
        out.records.append(ResidueRecord(i, residues[i], None, PAD, None, True, res_ids[i]))
    return out


def encode_chain(trace, cfg: EncoderConfig | None = None) -> ChainEncoding:
    """Encode a :class:`tilecode.pdbio.CaTrace` (or (residue, point) pairs)."""
    if hasattr(trace, "residues") and hasattr(trace, "gaps"):
        return encode_points(
            [r.ca for r in trace.residues],
            "".join(r.one_letter for r in trace.residues),
            trace.gaps,
            cfg,
            [r.res_id for r in trace.residues],
        )
    pairs = list(trace)
    return encode_points([p for _, p in pairs], "".join(a for a, _ in pairs), None, cfg)


def helix_trace(n: int = 20, rise: float = 1.5, twist_deg: float = 100.0, radius: float = 2.3) -> np.ndarray:
    """C-alpha positions of an ideal helix along z."""
    k = np.arange(n)
    phi = np.deg2rad(twist_deg) * k
    return np.column_stack([radius * np.cos(phi), radius * np.sin(phi), rise * k])
