"""Small standard triangulations used throughout tests and demos."""

from __future__ import annotations

from .kernel import Triangulation, parse_gluing_table

DOUBLE_TETRAHEDRON = """\
# Two tetrahedra glued by the identity on every facet: the 3-sphere, 4 vertices.
1:0:0 1:1:0 1:2:0 1:3:0
0:0:0 0:1:0 0:2:0 0:3:0
"""

FIGURE_EIGHT = """\
# Two-tetrahedron ideal triangulation of the figure-eight knot complement.
# Face maps 0132 1230 2310 2103 / 0132 3201 3012 2103 in image notation.
1:0:1 1:2:9 1:1:17 1:3:14
0:0:1 0:2:22 0:1:18 0:3:14
"""

PROJECTIVE_SPACE = """\
# One-vertex two-tetrahedron triangulation of real projective 3-space.
0:1:6 0:0:6 1:0:8 1:1:19
0:2:12 0:3:11 1:3:13 1:2:10
"""

REVERSED_EDGE = """\
# One tetrahedron with facet 3 glued to facet 2 by 0->1, 1->0, 2->3 and facet 0
# glued to facet 1 by the same map;
# edge 01 is identified with itself in reverse.
0:1:7 0:0:7 0:3:7 0:2:7
"""


def double_tetrahedron() -> Triangulation:
    return parse_gluing_table(DOUBLE_TETRAHEDRON)


def figure_eight() -> Triangulation:
    return parse_gluing_table(FIGURE_EIGHT)


def projective_space() -> Triangulation:
    return parse_gluing_table(PROJECTIVE_SPACE)


def reversed_edge() -> Triangulation:
    return parse_gluing_table(REVERSED_EDGE)


ALL = {
    "double_tetrahedron": DOUBLE_TETRAHEDRON,
    "figure_eight": FIGURE_EIGHT,
    "projective_space": PROJECTIVE_SPACE,
    "reversed_edge": REVERSED_EDGE,
}
