"""Peaks-and-valleys surfaces, the vector field they induce, and trajectories.

A peak set P defines the solid U = union over q in P of the orthants {x >= q};
unit cubes are piled from each peak towards +infinity, so the peaks point along
(-1, ..., -1) and the divided facets (those through each cube's lowest corner)
face the viewer.  Over a flat simplex the visible slant simplex is the lowest
fiber member contained in U.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .lattice import (
    FlatClass,
    Gradient,
    Monomial,
    OrderedSimplex,
    backward_predecessors,
    fiber,
    flat_class,
    forward_successors,
    gradient,
    local_trajectory,
)


class SmoothnessViolation(RuntimeError):
    """The field value at a step is not one of the two permitted gradients."""

    def __init__(self, step: int, flat: FlatClass, simplex: OrderedSimplex):
        self.step = step
        self.flat = flat
        self.simplex = simplex
        super().__init__(
            f"smoothness violated at step {step}: surface simplex {simplex} over {flat} "
            "is not reachable from the previous simplex"
        )


class Direction(enum.Enum):
    DOWN = "down"
    UP = "up"

    @property
    def flipped(self) -> Direction:
        return Direction.UP if self is Direction.DOWN else Direction.DOWN


@dataclass(frozen=True)
class PeakSet:
    peaks: tuple[Monomial, ...]

    def __post_init__(self):
        peaks = tuple(self.peaks)
        if not peaks:
            raise ValueError("peak set must be non-empty")
        dims = {p.dim for p in peaks}
        if len(dims) != 1:
            raise ValueError(f"peaks have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "peaks", peaks)

    @classmethod
    def of(cls, *exponents: Iterable[int]) -> PeakSet:
        return cls(tuple(Monomial(tuple(e)) for e in exponents))

    @classmethod
    def parse(cls, text: str, dim: int | None = None) -> PeakSet:
        """Read one monomial per line as space-separated exponents; '#' comments."""
        peaks = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                exps = tuple(int(t) for t in line.split())
                m = Monomial(exps)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            if dim is not None and m.dim != dim:
                raise ValueError(f"line {lineno}: expected {dim} exponents, got {m.dim}")
            peaks.append(m)
        return cls(tuple(peaks))

    @property
    def dim(self) -> int:
        return self.peaks[0].dim

    def translated(self, m: Monomial) -> PeakSet:
        return PeakSet(tuple(p * m for p in self.peaks))

    def contains(self, s: OrderedSimplex) -> bool:
        """True when every vertex of s lies in the solid (equivalently, its base does)."""
        return any(all(c >= q for c, q in zip(s.base.exponents, p.exponents)) for p in self.peaks)


def surface_simplex(peaks: PeakSet, b: FlatClass) -> OrderedSimplex:
    """The lowest slant simplex over b that lies in the solid."""
    if b.dim != peaks.dim:
        raise ValueError(f"flat simplex has dimension {b.dim}, peaks have {peaks.dim}")
    n = peaks.dim
    best = None
    for s in fiber(b, 0):
        base = s.base.exponents
        # smallest diagonal shift t putting base + t*(1..1) above some peak
        t = min(max(q - c for q, c in zip(p.exponents, base)) for p in peaks.peaks)
        shifted = s.translated(Monomial.diagonal(n, t))
        if best is None or shifted.base.degree < best.base.degree:
            best = shifted
    return best


class VectorField:
    """V(|s|) = gradient of the visible surface simplex over |s|, memoised."""

    def __init__(self, peaks: PeakSet):
        self.peaks = peaks
        self._cache: dict[FlatClass, OrderedSimplex] = {}

    def simplex(self, b: FlatClass) -> OrderedSimplex:
        s = self._cache.get(b)
        if s is None:
            s = self._cache[b] = surface_simplex(self.peaks, b)
        return s

    def __call__(self, b: FlatClass) -> Gradient:
        return gradient(self.simplex(b))


@dataclass(frozen=True)
class Step:
    flat: FlatClass
    gradient: Gradient
    simplex: OrderedSimplex
    direction: Direction


@dataclass
class Trajectory:
    steps: list[Step] = field(default_factory=list)
    closed: bool = False
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def gradients(self) -> list[Gradient]:
        return [s.gradient for s in self.steps]


def next_flat(s: OrderedSimplex, direction: Direction) -> FlatClass:
    down, _, up = local_trajectory(s)
    return down if direction is Direction.DOWN else up


def trace(
    peaks: PeakSet,
    start: FlatClass,
    max_steps: int = 1000,
    direction: Direction = Direction.DOWN,
) -> Trajectory:
    """Follow the field from ``start`` until the first (flat, gradient) pair recurs.

    Each step enters a flat simplex from one neighbour of its local trajectory
    and leaves through the other, so the travel direction flips exactly when
    the gradient changes.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    field_ = VectorField(peaks)
    cur = field_.simplex(start)
    traj = Trajectory([Step(start, gradient(cur), cur, direction)])
    while True:
        b = next_flat(cur, direction)
        nxt = field_.simplex(b)
        down, _, up = local_trajectory(nxt)
        came_from = flat_class(cur)
        if up == came_from:
            direction = Direction.DOWN
        elif down == came_from:
            direction = Direction.UP
        else:
            raise SmoothnessViolation(len(traj.steps), b, nxt)
        g = gradient(nxt)
        if b == traj.steps[0].flat and g == traj.steps[0].gradient:
            traj.closed = True
            return traj
        if len(traj.steps) >= max_steps:
            traj.truncated = True
            return traj
        traj.steps.append(Step(b, g, nxt, direction))
        cur = nxt


def flip(value: str) -> str:
    return {"U": "D", "D": "U"}[value]


def derivative_code(gradients: Trajectory | Iterable[Gradient], initial: str = "D") -> str:
    """Second-derivative code: the value flips exactly where the gradient changes."""
    if initial not in ("U", "D"):
        raise ValueError("initial value must be 'U' or 'D'")
    if isinstance(gradients, Trajectory):
        gradients = gradients.gradients
    gradients = list(gradients)
    if not gradients:
        raise ValueError("empty trajectory")
    out = [initial]
    for prev, cur in zip(gradients, gradients[1:]):
        out.append(out[-1] if cur == prev else flip(out[-1]))
    return "".join(out)


def permitted_successors(s: OrderedSimplex, direction: Direction):
    """Branches available after s when leaving it in ``direction``."""
    if direction is Direction.DOWN:
        return forward_successors(s)
    return backward_predecessors(s)
