"""Integer-lattice model of slant and flat simplices.

Points of Z^n are written as monomials in x1..xn, and ``a[x_i x_j x_k]`` is the
slant simplex with vertices a, a*x_i, a*x_i*x_j, a*x_i*x_j*x_k.  Projecting along
the all-ones direction identifies slant simplices that differ by a cyclic
rotation of their axes (and by diagonal shifts); the image is a flat simplex.

Axis indices are 1-based throughout, matching x1..xn.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

SUPPORTED_DIMS = (3, 4)

# Gradient letters used for the tetrahedral (n = 4) case.
GRADIENT_LETTERS = {
    frozenset({2, 3, 4}): "K",
    frozenset({1, 2, 3}): "L",
    frozenset({1, 2, 4}): "M",
    frozenset({1, 3, 4}): "N",
}
LETTER_GRADIENTS = {v: k for k, v in GRADIENT_LETTERS.items()}


@dataclass(frozen=True, order=True)
class Monomial:
    """A lattice point x1^e1 ... xn^en."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) not in SUPPORTED_DIMS:
            raise ValueError(f"dimension must be one of {SUPPORTED_DIMS}, got {len(exps)}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, dim: int) -> Monomial:
        return cls((0,) * dim)

    @classmethod
    def diagonal(cls, dim: int, power: int = 1) -> Monomial:
        """(x1 x2 ... xn)^power."""
        return cls((power,) * dim)

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        """Exponent sum, i.e. the height along the diagonal."""
        return sum(self.exponents)

    def times(self, axis: int, power: int = 1) -> Monomial:
        """Multiply by x_axis**power."""
        _check_axis(axis, self.dim)
        exps = list(self.exponents)
        exps[axis - 1] += power
        return Monomial(tuple(exps))

    def over(self, axis: int) -> Monomial:
        return self.times(axis, -1)

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        _check_same_dim(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        _check_same_dim(self, other)
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.exponents)

    def as_array(self) -> np.ndarray:
        return np.array(self.exponents, dtype=float)


@dataclass(frozen=True)
class Gradient:
    """Unordered axis set attached to a slant simplex (a square-free monomial)."""

    indices: frozenset[int]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))
        if len(self.indices) != self.dim - 1:
            raise ValueError(f"gradient in dimension {self.dim} needs {self.dim - 1} indices")
        for i in self.indices:
            _check_axis(i, self.dim)

    @classmethod
    def from_letter(cls, letter: str) -> Gradient:
        return cls(LETTER_GRADIENTS[letter], 4)

    @property
    def letter(self) -> str:
        """K/L/M/N for tetrahedra; the monomial name otherwise."""
        if self.dim == 4:
            return GRADIENT_LETTERS[self.indices]
        return self.monomial_name

    @property
    def monomial_name(self) -> str:
        return "".join(f"x{i}" for i in sorted(self.indices))

    @property
    def missing(self) -> int:
        (m,) = set(range(1, self.dim + 1)) - self.indices
        return m

    def __str__(self) -> str:
        return self.letter


@dataclass(frozen=True)
class OrderedSimplex:
    """Slant simplex ``base[x_{axes[0]} x_{axes[1]} ...]`` with n-1 distinct axes."""

    base: Monomial
    axes: tuple[int, ...]

    def __post_init__(self):
        axes = tuple(int(a) for a in self.axes)
        object.__setattr__(self, "axes", axes)
        n = self.base.dim
        if len(axes) != n - 1:
            raise ValueError(f"need {n - 1} axes in dimension {n}, got {axes}")
        if len(set(axes)) != len(axes):
            raise ValueError(f"axes must be distinct: {axes}")
        for a in axes:
            _check_axis(a, n)

    @classmethod
    def parse(cls, text: str) -> OrderedSimplex:
        """Parse ``"1,1,0,1[3,4,1]"`` (base exponents, then axes)."""
        text = text.strip()
        try:
            head, tail = text.split("[")
            if not tail.endswith("]"):
                raise ValueError
            base = tuple(int(t) for t in head.replace(" ", "").split(","))
            axes = tuple(int(t) for t in tail[:-1].replace(" ", "").split(","))
        except ValueError:
            raise ValueError(f"cannot parse simplex {text!r}; expected e.g. '1,1,0,1[3,4,1]'") from None
        return cls(Monomial(base), axes)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def missing_axis(self) -> int:
        (m,) = set(range(1, self.dim + 1)) - set(self.axes)
        return m

    def translated(self, m: Monomial) -> OrderedSimplex:
        return OrderedSimplex(self.base * m, self.axes)

    def __str__(self) -> str:
        return f"{self.base}[{','.join(str(a) for a in self.axes)}]"


@dataclass(frozen=True)
class FlatClass:
    """A flat simplex |s|, stored through its canonical slant representative.

    The representative is the fiber member whose base has exponent sum 0.
    Build instances with :func:`flat_class`.
    """

    representative: OrderedSimplex

    @property
    def dim(self) -> int:
        return self.representative.dim

    @property
    def key(self) -> str:
        return str(self.representative)

    def __str__(self) -> str:
        return f"|{self.key}|"


class Branches(NamedTuple):
    same: OrderedSimplex
    switch: OrderedSimplex


def _check_axis(axis: int, dim: int) -> None:
    if not 1 <= axis <= dim:
        raise ValueError(f"axis {axis} out of range 1..{dim}")


def _check_same_dim(a: Monomial, b: Monomial) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def vertices(s: OrderedSimplex) -> list[Monomial]:
    """Vertices in cumulative-product order: a, a*x_i, a*x_i*x_j, ..."""
    out = [s.base]
    for axis in s.axes:
        out.append(out[-1].times(axis))
    return out


def gradient(s: OrderedSimplex) -> Gradient:
    return Gradient(frozenset(s.axes), s.dim)


@lru_cache(maxsize=None)
def hyperplane_basis(dim: int) -> np.ndarray:
    """Orthonormal basis of {sum x = 0} in R^dim, one basis vector per row.

    Row k (1-based) is (1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)) with k ones.
    """
    rows = []
    for k in range(1, dim):
        row = np.zeros(dim)
        row[:k] = 1.0
        row[k] = -float(k)
        rows.append(row / np.sqrt(k * (k + 1)))
    basis = np.array(rows)
    basis.setflags(write=False)
    return basis


def project(m: Monomial | Sequence[float] | np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the sum-zero hyperplane, in hyperplane coordinates."""
    v = m.as_array() if isinstance(m, Monomial) else np.asarray(m, dtype=float)
    return hyperplane_basis(v.shape[-1]) @ v


def _rotations(s: OrderedSimplex) -> list[OrderedSimplex]:
    """The n slant simplices obtained by cycling through the full axis order of s."""
    cycle = s.axes + (s.missing_axis,)
    n = s.dim
    out = []
    base = s.base
    for r in range(n):
        out.append(OrderedSimplex(base, (cycle[r:] + cycle[:r])[: n - 1]))
        base = base.times(cycle[r])
    return out


def flat_class(s: OrderedSimplex) -> FlatClass:
    n = s.dim
    for r in _rotations(s):
        if r.base.degree % n == 0:
            return FlatClass(r.translated(Monomial.diagonal(n, -(r.base.degree // n))))
    raise AssertionError("unreachable: rotation degrees cover every residue mod n")


def fiber(b: FlatClass, level: int = 0) -> list[OrderedSimplex]:
    """Slant simplices over b whose base degree lies in [n*level, n*level + n - 1].

    Ordered by base degree; each of the n gradients occurs exactly once.
    """
    shift = Monomial.diagonal(b.dim, level)
    return [r.translated(shift) for r in _rotations(b.representative)]


def forward_successors(s: OrderedSimplex) -> Branches:
    """The two slant simplices permitted over the downward neighbour of |s|.

    For s = a[x_i x_j x_k] with l the unused axis: ``same`` is (a x_i)[x_j x_k x_i]
    (gradient kept) and ``switch`` is (a x_i / x_l)[x_l x_j x_k] (x_i traded for x_l).
    Both lie over the same flat simplex.  After a switch the trajectory leaves
    the new simplex through its upward side.
    """
    i, rest = s.axes[0], s.axes[1:]
    l = s.missing_axis
    moved = s.base.times(i)
    return Branches(
        same=OrderedSimplex(moved, rest + (i,)),
        switch=OrderedSimplex(moved.over(l), (l,) + rest),
    )


def backward_predecessors(s: OrderedSimplex) -> Branches:
    """Mirror of :func:`forward_successors` over the upward neighbour of |s|.

    For s = a[x_i x_j x_k]: ``same`` is (a / x_k)[x_k x_i x_j] and ``switch`` is
    a[x_i x_j x_l].
    """
    k, rest = s.axes[-1], s.axes[:-1]
    l = s.missing_axis
    return Branches(
        same=OrderedSimplex(s.base.over(k), (k,) + rest),
        switch=OrderedSimplex(s.base, rest + (l,)),
    )


def local_trajectory(s: OrderedSimplex) -> tuple[FlatClass, FlatClass, FlatClass]:
    """(downward neighbour, |s|, upward neighbour)."""
    return (
        flat_class(forward_successors(s).same),
        flat_class(s),
        flat_class(backward_predecessors(s).same),
    )
