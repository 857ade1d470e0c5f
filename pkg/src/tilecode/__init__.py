"""Discrete differential geometry of triangle and tetrahedron flows, and 5-tile
codes of local protein backbone structure."""

from .encoder import EncoderConfig, TileCode, encode_chain, encode_fragment, encode_points, fold_fragment, letter
from .flow import Direction, PeakSet, SmoothnessViolation, Trajectory, VectorField, derivative_code, surface_simplex, trace
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
    project,
    vertices,
)
from .pdbio import CaTrace, parse_pdb, read_pdb

__version__ = "0.1.0"
