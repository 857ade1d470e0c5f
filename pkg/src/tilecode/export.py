"""SVG drawings of triangle flows and OBJ meshes of tetrahedron chains."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .flow import Trajectory, derivative_code
from .geometry import EmbeddedTetra
from .lattice import project, vertices

TETRA_FACES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def tetrahedra_to_obj(tetras: Sequence[EmbeddedTetra], names: Sequence[str] | None = None) -> str:
    """Wavefront OBJ text, one group of four triangles per tetrahedron."""
    names = list(names) if names is not None else [f"T{i}" for i in range(len(tetras))]
    lines = [f"# {len(tetras)} tetrahedra"]
    for k, (tet, name) in enumerate(zip(tetras, names)):
        lines.append(f"g {name}")
        for x, y, z in tet.realized_vertices():
            lines.append(f"v {x:.6f} {y:.6f} {z:.6f}")
        off = 4 * k + 1
        for a, b, c in TETRA_FACES:
            lines.append(f"f {a + off} {b + off} {c + off}")
    return "\n".join(lines) + "\n"


def flow_to_svg(traj: Trajectory, unit: float = 60.0, margin: float = 20.0) -> str:
    """Draw the flat triangles of a 3-D lattice trajectory.

    Each triangle carries its step index and derivative value; the edge
    (v0, v2) that marks the gradient is drawn bold.
    """
    if traj.steps and traj.steps[0].simplex.dim != 3:
        raise ValueError("SVG export is for triangle flows (dimension 3)")
    code = derivative_code(traj) if traj.steps else ""
    tris = [np.array([project(v) for v in vertices(s.simplex)]) * unit for s in traj.steps]
    pts = np.vstack(tris) if tris else np.zeros((1, 2))
    lo, hi = pts.min(axis=0) - margin, pts.max(axis=0) + margin
    width, height = hi - lo

    def xy(p):
        return f"{p[0] - lo[0]:.2f},{hi[1] - p[1]:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">'
    ]
    for i, (tri, step) in enumerate(zip(tris, traj.steps)):
        fill = "#dddddd" if code[i] == "D" else "#ffffff"
        out.append(
            f'<polygon class="trajectory-triangle" data-step="{i}" data-gradient="{step.gradient.letter}" '
            f'points="{" ".join(xy(p) for p in tri)}" fill="{fill}" stroke="#555555" stroke-width="1"/>'
        )
        a, b = (xy(tri[0]).split(","), xy(tri[2]).split(","))
        out.append(
            f'<line class="gradient-edge" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
            'stroke="#000000" stroke-width="4"/>'
        )
        c = tri.mean(axis=0)
        cx, cy = xy(c).split(",")
        out.append(
            f'<text x="{cx}" y="{cy}" font-size="{unit / 5:.1f}" text-anchor="middle">{i}{code[i]}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
