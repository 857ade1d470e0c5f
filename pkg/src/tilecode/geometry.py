"""Metric tetrahedra in R^3 obtained by projecting lattice tetrahedra of Z^4.

A projected lattice tetrahedron a[x_i x_j x_k] has four short edges of length
sqrt(3)/2 and two perpendicular long edges of length 1, (v0, v2) and (v1, v3).
Consecutive tetrahedra of a trajectory share a face containing one long edge;
that edge is the hinge a folded chain may rotate about.  The gradient is drawn
as the short edge (v0, v3).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .flow import Direction, flip
from .lattice import Branches, OrderedSimplex, backward_predecessors, forward_successors, project, vertices

DEFAULT_SCALE = 3.8  # Angstrom per long edge, about one C-alpha virtual bond
PARALLEL_TOL = 1e-9


class Branch(str, enum.Enum):
    SAME = "same"
    SWITCH = "switch"


class Arm(str, enum.Enum):
    CENTER = "center"
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True, eq=False)
class RigidTransform:
    """x -> rotation @ x + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    @classmethod
    def identity(cls) -> RigidTransform:
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_translation(cls, v) -> RigidTransform:
        return cls(np.eye(3), np.asarray(v, dtype=float))

    @classmethod
    def from_rotation(cls, rotation, center=None) -> RigidTransform:
        """Rotation about ``center`` (origin by default)."""
        r = np.asarray(rotation, dtype=float)
        if center is None:
            return cls(r, np.zeros(3))
        c = np.asarray(center, dtype=float)
        return cls(r, c - r @ c)

    def apply(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return p @ self.rotation.T + self.translation

    def apply_vector(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ self.rotation.T

    def then(self, other: RigidTransform) -> RigidTransform:
        """Apply self first, then other."""
        return RigidTransform(other.rotation @ self.rotation, other.rotation @ self.translation + other.translation)

    def inverse(self) -> RigidTransform:
        rt = self.rotation.T
        return RigidTransform(rt, -(rt @ self.translation))

    def is_proper(self, tol: float = 1e-9) -> bool:
        r = self.rotation
        return bool(np.allclose(r.T @ r, np.eye(3), atol=tol) and abs(np.linalg.det(r) - 1.0) < tol)


def axis_angle_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix; ``axis`` need not be normalised."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + np.sin(angle) * kx + (1.0 - np.cos(angle)) * (kx @ kx)


def align_rotation(current_dir, target_dir) -> RigidTransform:
    """Smallest rotation taking the direction ``current_dir`` onto ``target_dir``.

    Opposite directions are turned by pi about the coordinate axis least aligned
    with ``current_dir`` (lowest index on ties), projected perpendicular to it.
    """
    u = np.asarray(current_dir, dtype=float)
    w = np.asarray(target_dir, dtype=float)
    nu, nw = np.linalg.norm(u), np.linalg.norm(w)
    if nu == 0.0 or nw == 0.0:
        raise ValueError("cannot align a zero vector")
    u, w = u / nu, w / nw
    c = float(np.clip(u @ w, -1.0, 1.0))
    axis = np.cross(u, w)
    s = float(np.linalg.norm(axis))
    if s < PARALLEL_TOL:
        if c > 0:
            return RigidTransform.identity()
        e = np.zeros(3)
        e[int(np.argmin(np.abs(u)))] = 1.0
        perp = e - (e @ u) * u
        return RigidTransform(axis_angle_matrix(perp, np.pi), np.zeros(3))
    return RigidTransform(axis_angle_matrix(axis, np.arctan2(s, c)), np.zeros(3))


def rotation_angle(r: np.ndarray) -> float:
    return float(np.arccos(np.clip((np.trace(r) - 1.0) / 2.0, -1.0, 1.0)))


@dataclass(frozen=True, eq=False)
class EmbeddedTetra:
    """A lattice tetrahedron placed in space: transform(scale * project(vertex))."""

    lattice: OrderedSimplex
    transform: RigidTransform = RigidTransform.identity()
    scale: float = DEFAULT_SCALE

    def __post_init__(self):
        if self.lattice.dim != 4:
            raise ValueError("embedded tetrahedra come from Z^4 simplices")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def local_vertices(self) -> np.ndarray:
        return self.scale * np.array([project(v) for v in vertices(self.lattice)])

    def realized_vertices(self) -> np.ndarray:
        return self.transform.apply(self.local_vertices())

    def long_edges(self) -> tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]:
        p = self.realized_vertices()
        return (p[0], p[2]), (p[1], p[3])

    def anchor(self) -> np.ndarray:
        return self.realized_vertices().mean(axis=0)

    def edge_lengths(self) -> list[float]:
        p = self.realized_vertices()
        return [float(np.linalg.norm(p[a] - p[b])) for a in range(4) for b in range(a + 1, 4)]

    def moved(self, t: RigidTransform) -> EmbeddedTetra:
        return replace(self, transform=self.transform.then(t))

    def with_lattice(self, lattice: OrderedSimplex) -> EmbeddedTetra:
        return replace(self, lattice=lattice)


def realized_vertices(e: EmbeddedTetra) -> np.ndarray:
    return e.realized_vertices()


def long_edges(e: EmbeddedTetra):
    return e.long_edges()


def anchor(e: EmbeddedTetra) -> np.ndarray:
    return e.anchor()


@dataclass(frozen=True, eq=False)
class FoldState:
    """One tetrahedron of a folding chain.

    ``direction`` says which way the chain runs through this tetrahedron.
    Travelling DOWN it enters across the long edge (v0, v2) and leaves across
    (v1, v3); UP is the reverse.
    """

    tetra: EmbeddedTetra
    derivative: str
    direction: Direction
    arm: Arm = Arm.CENTER

    def moved(self, t: RigidTransform) -> FoldState:
        return replace(self, tetra=self.tetra.moved(t))


def hinge_edge(s: FoldState) -> tuple[np.ndarray, np.ndarray]:
    """The long edge shared with the next tetrahedron of the chain."""
    p = s.tetra.realized_vertices()
    if s.direction is Direction.DOWN:
        return p[1], p[3]
    return p[2], p[0]


def bold_edge(s: FoldState) -> tuple[np.ndarray, np.ndarray]:
    """The short edge (v0, v3) that marks the gradient, oriented along travel.

    It points along x_l for the unused axis l; a run of equal gradients
    advances along this edge, so it is the local direction of the chain.
    """
    p = s.tetra.realized_vertices()
    if s.direction is Direction.DOWN:
        return p[0], p[3]
    return p[3], p[0]


def bold_direction(s: FoldState) -> np.ndarray:
    a, b = bold_edge(s)
    return b - a


def lattice_branches(s: FoldState) -> Branches:
    if s.direction is Direction.DOWN:
        return forward_successors(s.tetra.lattice)
    return backward_predecessors(s.tetra.lattice)


def advance(s: FoldState, branch: Branch | str, arm: Arm | None = None) -> FoldState:
    """Attach the next tetrahedron rigidly to s (same transform and scale).

    A switch changes the gradient, flips the derivative and reverses the side
    through which the chain continues.
    """
    branch = Branch(branch)
    options = lattice_branches(s)
    lattice = options.same if branch is Branch.SAME else options.switch
    same = branch is Branch.SAME
    return FoldState(
        tetra=s.tetra.with_lattice(lattice),
        derivative=s.derivative if same else flip(s.derivative),
        direction=s.direction if same else s.direction.flipped,
        arm=arm if arm is not None else s.arm,
    )


def place_successor(s: FoldState, branch: Branch | str) -> FoldState:
    """Next tetrahedron across the (v1, v3) edge, via the forward successors."""
    if s.direction is not Direction.DOWN:
        s = replace(s, direction=Direction.DOWN)
    return advance(s, branch, Arm.FORWARD)


def place_predecessor(s: FoldState, branch: Branch | str) -> FoldState:
    """Next tetrahedron across the (v0, v2) edge, via the backward predecessors."""
    if s.direction is not Direction.UP:
        s = replace(s, direction=Direction.UP)
    return advance(s, branch, Arm.BACKWARD)
