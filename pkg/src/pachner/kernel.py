"""Generalised 3-manifold triangulations and their skeleta.

A triangulation is ``n`` tetrahedra whose facets are glued in pairs by affine
maps.  Facet ``f`` of a tetrahedron is the facet opposite vertex ``f``.  A
gluing of tetrahedron ``a`` facet ``f`` to tetrahedron ``b`` is recorded as a
:class:`~pachner.perm.Perm4` ``p`` on vertex labels with ``p[f]`` the
destination facet; the reverse gluing is then ``p.inverse()``.

Gluings are stored in one flat tuple with entry ``4 * tet + facet`` equal to
``24 * dest_tet + perm_code`` (or ``-1`` for an unglued facet).  Everything
that needs speed reads that tuple directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import gf2
from .errors import (
    FacetSelfGluing,
    InconsistentGluing,
    IndexOutOfRange,
    InvalidEdge,
    NotClosed,
    ParseError,
)
from .perm import COMPOSE, CODE, INVERSE, PERMS, Perm4, transposition

MAX_TETRAHEDRA = 1 << 24

EDGE_VERTS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_NUMBER = [[-1] * 4 for _ in range(4)]
for _e, (_u, _v) in enumerate(EDGE_VERTS):
    EDGE_NUMBER[_u][_v] = EDGE_NUMBER[_v][_u] = _e
# Edges of the face opposite each vertex.
FACE_EDGES = tuple(
    tuple(e for e, (u, v) in enumerate(EDGE_VERTS) if f not in (u, v)) for f in range(4)
)
# EDGE_EMBED[e]: permutation code (u, v, a, b) with (u, v) the edge, a < b.
EDGE_EMBED = tuple(
    CODE[(u, v) + tuple(w for w in range(4) if w not in (u, v))] for u, v in EDGE_VERTS
)
SWAP23 = transposition(2, 3)


class Gluing(NamedTuple):
    destination_tet: int
    destination_facet: int
    map: Perm4


class Triangulation:
    """An immutable generalised triangulation.

    Build one with :func:`build` or :func:`parse_gluing_table`; moves return
    new instances.  Skeleton and signature are cached on first use.
    """

    __slots__ = ("_adj", "_skeleton", "_links", "_sig", "__weakref__")

    def __init__(self, adj: Sequence[int]):
        self._adj = tuple(adj)
        self._skeleton = None
        self._links = None
        self._sig = None

    @property
    def size(self) -> int:
        return len(self._adj) >> 2

    def __len__(self) -> int:
        return len(self._adj) >> 2

    @property
    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def is_closed(self) -> bool:
        return -1 not in self._adj

    def gluing(self, tet: int, facet: int) -> Gluing | None:
        if not (0 <= tet < self.size and 0 <= facet < 4):
            raise IndexOutOfRange(f"no facet {facet} of tetrahedron {tet}")
        g = self._adj[4 * tet + facet]
        if g < 0:
            return None
        dest, code = divmod(g, 24)
        return Gluing(dest, PERMS[code][facet], Perm4.from_code(code))

    def gluings(self) -> list[tuple[int, int, Gluing]]:
        """Every glued (tet, facet, gluing), each pair listed from both sides."""
        out = []
        for t in range(self.size):
            for f in range(4):
                g = self.gluing(t, f)
                if g is not None:
                    out.append((t, f, g))
        return out

    def components(self) -> list[list[int]]:
        """Tetrahedra grouped by connected component of the face-pairing graph."""
        adj = self._adj
        seen = [False] * self.size
        comps = []
        for start in range(self.size):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            i = 0
            while i < len(comp):
                t = comp[i]
                i += 1
                for f in range(4):
                    g = adj[4 * t + f]
                    if g >= 0 and not seen[g // 24]:
                        seen[g // 24] = True
                        comp.append(g // 24)
            comps.append(comp)
        return comps

    def relabel(self, tet_map: Sequence[int], vertex_maps: Sequence[Perm4 | int]) -> Triangulation:
        """Apply an isomorphism.

        Old tetrahedron ``t`` becomes ``tet_map[t]``, and its vertex ``v``
        becomes vertex ``vertex_maps[t][v]`` of the new tetrahedron.
        """
        n = self.size
        if sorted(tet_map) != list(range(n)) or len(vertex_maps) != n:
            raise ValueError("relabelling must be a bijection on tetrahedra")
        vm = [m.code if isinstance(m, Perm4) else m for m in vertex_maps]
        adj = [-1] * (4 * n)
        for t in range(n):
            for f in range(4):
                g = self._adj[4 * t + f]
                if g < 0:
                    continue
                s, q = divmod(g, 24)
                # new perm = vm[s] o q o vm[t]^-1
                code = COMPOSE[vm[s]][COMPOSE[q][INVERSE[vm[t]]]]
                adj[4 * tet_map[t] + PERMS[vm[t]][f]] = 24 * tet_map[s] + code
        return Triangulation(adj)

    def skeleton(self) -> Skeleton:
        if self._skeleton is None:
            self._skeleton = compute_skeleton(self)
        return self._skeleton

    def links(self) -> list[VertexLink]:
        if self._links is None:
            self._links = vertex_links(self)
        return self._links

    def signature(self) -> str:
        if self._sig is None:
            from .signature import encode

            self._sig = encode(self)
        return self._sig

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __getstate__(self):
        return self._adj

    def __setstate__(self, state):
        self._adj = state
        self._skeleton = None
        self._links = None
        self._sig = None

    def __repr__(self) -> str:
        return f"<Triangulation with {self.size} tetrahedra>"


def check_involution(adj: Sequence[int]) -> None:
    """Raise if the flat gluing table is not a fixed-point-free involution."""
    for i, g in enumerate(adj):
        if g < 0:
            continue
        t, f = divmod(i, 4)
        s, q = divmod(g, 24)
        j = 4 * s + PERMS[q][f]
        if j == i:
            raise FacetSelfGluing(f"facet {f} of tetrahedron {t} is glued to itself")
        if adj[j] != 24 * t + INVERSE[q]:
            raise InconsistentGluing(f"gluing at tetrahedron {t} facet {f} is not involutive")


def build(size: int, gluings: Iterable[tuple]) -> Triangulation:
    """Construct a triangulation from ``(tet, facet, gluing)`` triples.

    Each gluing may be a :class:`Gluing` or a ``(dest_tet, dest_facet, perm)``
    triple with ``perm`` a :class:`Perm4`, an image tuple, or a code.  A pair
    of facets only needs to be listed from one side; if both sides are given
    they must agree.
    """
    if not 0 <= size <= MAX_TETRAHEDRA:
        raise IndexOutOfRange(f"triangulation size {size} out of range")
    adj = [-1] * (4 * size)
    for tet, facet, glu in gluings:
        dest, dfacet, perm = glu
        if isinstance(perm, Perm4):
            code = perm.code
        elif isinstance(perm, int):
            if not 0 <= perm < 24:
                raise IndexOutOfRange(f"permutation code {perm} out of range")
            code = perm
        else:
            code = CODE.get(tuple(perm), -1)
            if code < 0:
                raise ValueError(f"not a permutation: {perm!r}")
        for t, f in ((tet, facet), (dest, dfacet)):
            if not (0 <= t < size and 0 <= f < 4):
                raise IndexOutOfRange(f"facet {f} of tetrahedron {t} out of range")
        if PERMS[code][facet] != dfacet:
            raise InconsistentGluing(
                f"map {PERMS[code]} does not send facet {facet} to facet {dfacet}"
            )
        if (tet, facet) == (dest, dfacet):
            raise FacetSelfGluing(f"facet {facet} of tetrahedron {tet} glued to itself")
        for i, want in ((4 * tet + facet, 24 * dest + code),
                        (4 * dest + dfacet, 24 * tet + INVERSE[code])):
            if adj[i] not in (-1, want):
                raise InconsistentGluing(
                    f"conflicting gluings for tetrahedron {i // 4} facet {i % 4}"
                )
            adj[i] = want
    return Triangulation(adj)


# ---------------------------------------------------------------------------
# Skeleton


class Skeleton:
    """Vertex, edge and triangle classes of a closed triangulation.

    Classes are numbered in order of first appearance when scanning
    (tetrahedron, sub-simplex) pairs in increasing order, and the members of
    each class are listed in orbit order.  Edge members are *embeddings*:
    pairs ``(tet, perm_code)`` where ``perm[0], perm[1]`` are the edge's ends
    (consistently oriented across the class) and walking out through facet
    ``perm[3]`` reaches the next member.
    """

    __slots__ = (
        "size", "vertices", "vertex_of", "edges", "edge_of", "invalid_edges",
        "triangles", "triangle_of",
    )

    def __init__(self, size, vertices, vertex_of, edges, edge_of, invalid_edges,
                 triangles, triangle_of):
        self.size = size
        self.vertices: list[list[tuple[int, int]]] = vertices
        self.vertex_of: list[int] = vertex_of
        self.edges: list[list[tuple[int, int]]] = edges
        self.edge_of: list[int] = edge_of
        self.invalid_edges: list[int] = invalid_edges
        self.triangles: list[tuple[tuple[int, int], tuple[int, int]]] = triangles
        self.triangle_of: list[int] = triangle_of

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return len(self.vertices), len(self.edges), len(self.triangles), self.size

    def degree(self, edge: int) -> int:
        return len(self.edges[edge])

    @property
    def degrees(self) -> list[int]:
        return [len(e) for e in self.edges]

    def euler_characteristic(self) -> int:
        v, e, f, t = self.counts
        return v - e + f - t


def compute_skeleton(tri: Triangulation) -> Skeleton:
    if not tri.is_closed():
        raise NotClosed("skeleton needs a closed triangulation")
    adj = tri._adj
    n = tri.size

    vertex_of = [-1] * (4 * n)
    vertices = []
    for start in range(4 * n):
        if vertex_of[start] >= 0:
            continue
        idx = len(vertices)
        vertex_of[start] = idx
        members = [start]
        i = 0
        while i < len(members):
            t, v = divmod(members[i], 4)
            i += 1
            for f in range(4):
                if f == v:
                    continue
                s, q = divmod(adj[4 * t + f], 24)
                k = 4 * s + PERMS[q][v]
                if vertex_of[k] < 0:
                    vertex_of[k] = idx
                    members.append(k)
        vertices.append([divmod(k, 4) for k in members])

    edge_of = [-1] * (6 * n)
    edges = []
    invalid = []
    for start in range(6 * n):
        if edge_of[start] >= 0:
            continue
        idx = len(edges)
        t, e = divmod(start, 6)
        q = EDGE_EMBED[e]
        first = PERMS[q][0]
        members = []
        bad = False
        while True:
            members.append((t, q))
            edge_of[6 * t + EDGE_NUMBER[PERMS[q][0]][PERMS[q][1]]] = idx
            img = PERMS[q]
            s, p = divmod(adj[4 * t + img[3]], 24)
            q = COMPOSE[COMPOSE[p][q]][SWAP23]
            t = s
            k = 6 * t + EDGE_NUMBER[PERMS[q][0]][PERMS[q][1]]
            if k == start:
                if PERMS[q][0] != first:
                    bad = True
                break
            if edge_of[k] == idx:
                bad = True
                break
        if bad:
            invalid.append(idx)
        edges.append(members)

    triangle_of = [-1] * (4 * n)
    triangles = []
    for i in range(4 * n):
        if triangle_of[i] >= 0:
            continue
        t, f = divmod(i, 4)
        s, q = divmod(adj[i], 24)
        j = 4 * s + PERMS[q][f]
        triangle_of[i] = triangle_of[j] = len(triangles)
        triangles.append(((t, f), (s, PERMS[q][f])))

    return Skeleton(n, vertices, vertex_of, edges, edge_of, invalid, triangles, triangle_of)


# ---------------------------------------------------------------------------
# Vertex links and validity


@dataclass(frozen=True)
class VertexLink:
    vertex_class: int
    triangles: int
    euler_characteristic: int
    orientable: bool
    connected: bool

    @property
    def is_sphere(self) -> bool:
        return self.connected and self.orientable and self.euler_characteristic == 2


def _cyclic_sign(v: int, x: int, y: int) -> int:
    """+1 if x -> y follows the cyclic order of the sorted vertices other than v."""
    others = [w for w in range(4) if w != v]
    i, j = others.index(x), others.index(y)
    return 1 if (j - i) % 3 == 1 else -1


_CYCLIC = [[[_cyclic_sign(v, x, y) if len({v, x, y}) == 3 else 0 for y in range(4)]
            for x in range(4)] for v in range(4)]


def vertex_links(tri: Triangulation, skel: Skeleton | None = None) -> list[VertexLink]:
    """Build the link of every vertex class as an explicit triangle complex.

    There is one link triangle per (tet, vertex) corner; its three sides are
    glued across the three facets meeting that corner.  Link vertices are the
    orbits of corner-edge ends ``(tet, v, w)``, which are the edge-class ends.
    """
    if not tri.is_closed():
        raise NotClosed("vertex links need a closed triangulation")
    skel = skel or tri.skeleton()
    adj = tri._adj

    # Link vertices are the ends of edge classes: two per valid edge, but
    # only one when the edge is identified with itself in reverse.
    ends = [0] * len(skel.vertices)
    invalid = set(skel.invalid_edges)
    for e, members in enumerate(skel.edges):
        t, q = members[0]
        img = PERMS[q]
        ends[skel.vertex_of[4 * t + img[0]]] += 1
        if e not in invalid:
            ends[skel.vertex_of[4 * t + img[1]]] += 1

    links = []
    for idx, corners in enumerate(skel.vertices):
        k = len(corners)
        euler = ends[idx] - (3 * k) // 2 + k

        # Orient link triangles by propagation; a clash means non-orientable.
        orient = {corners[0]: 1}
        queue = [corners[0]]
        orientable = True
        i = 0
        while i < len(queue):
            t, v = queue[i]
            i += 1
            for f in range(4):
                if f == v:
                    continue
                x, y = (w for w in range(4) if w != v and w != f)
                s, q = divmod(adj[4 * t + f], 24)
                img = PERMS[q]
                other = (s, img[v])
                want = -orient[(t, v)] * _CYCLIC[v][x][y] * _CYCLIC[img[v]][img[x]][img[y]]
                have = orient.get(other)
                if have is None:
                    orient[other] = want
                    queue.append(other)
                elif have != want:
                    orientable = False
        links.append(VertexLink(idx, k, euler, orientable, len(orient) == k))
    return links


@dataclass(frozen=True)
class ValidityReport:
    closed: bool
    invalid_edges: tuple[int, ...]
    ideal_vertices: tuple[int, ...]
    material_vertex_count: int

    @property
    def is_pseudo_manifold(self) -> bool:
        return self.closed and not self.invalid_edges

    @property
    def is_closed_3_manifold(self) -> bool:
        return self.is_pseudo_manifold and not self.ideal_vertices

    @property
    def ideal_vertex_count(self) -> int:
        return len(self.ideal_vertices)

    def as_dict(self) -> dict:
        return {
            "closed": self.closed,
            "invalid_edges": list(self.invalid_edges),
            "ideal_vertices": list(self.ideal_vertices),
            "material_vertex_count": self.material_vertex_count,
            "is_pseudo_manifold": self.is_pseudo_manifold,
            "is_closed_3_manifold": self.is_closed_3_manifold,
        }


def validate(tri: Triangulation) -> ValidityReport:
    if not tri.is_closed():
        return ValidityReport(False, (), (), 0)
    skel = tri.skeleton()
    links = tri.links()
    ideal = tuple(link.vertex_class for link in links if not link.is_sphere)
    return ValidityReport(True, tuple(skel.invalid_edges), ideal, len(links) - len(ideal))


def z2_homology_ranks(tri: Triangulation, skel: Skeleton | None = None) -> tuple[int, int, int, int]:
    """Betti numbers over GF(2) of the cell complex of the triangulation."""
    if not tri.is_closed():
        raise NotClosed("homology needs a closed triangulation")
    skel = skel or tri.skeleton()
    if skel.invalid_edges:
        raise InvalidEdge(f"edges {skel.invalid_edges} are identified with themselves in reverse")
    vof, eof, fof = skel.vertex_of, skel.edge_of, skel.triangle_of

    d1 = []
    for members in skel.edges:
        t, q = members[0]
        u, v = PERMS[q][0], PERMS[q][1]
        d1.append((1 << vof[4 * t + u]) ^ (1 << vof[4 * t + v]))
    d2 = []
    for (t, f), _ in skel.triangles:
        row = 0
        for e in FACE_EDGES[f]:
            row ^= 1 << eof[6 * t + e]
        d2.append(row)
    d3 = []
    for t in range(tri.size):
        row = 0
        for f in range(4):
            row ^= 1 << fof[4 * t + f]
        d3.append(row)

    r1, r2, r3 = gf2.rank(d1), gf2.rank(d2), gf2.rank(d3)
    v, e, f, t = skel.counts
    return v - r1, e - r1 - r2, f - r2 - r3, t - r3


# ---------------------------------------------------------------------------
# Plain-text gluing tables


def parse_gluing_table(text: str) -> Triangulation:
    """Parse the one-line-per-tetrahedron format.

    Each line holds four entries ``destTet:destFacet:permCode`` (or ``_`` for
    an unglued facet); ``#`` starts a comment line.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(f"line {lineno}: expected 4 entries, got {len(fields)}")
        rows.append((lineno, fields))
    gluings = []
    for tet, (lineno, fields) in enumerate(rows):
        for facet, field in enumerate(fields):
            if field == "_":
                continue
            try:
                dest, dfacet, code = (int(x) for x in field.split(":"))
            except ValueError:
                raise ParseError(f"line {lineno}: bad entry {field!r}") from None
            gluings.append((tet, facet, (dest, dfacet, code)))
    tri = build(len(rows), gluings)
    # One-sided listings are accepted by build; a table must list both sides.
    for tet, (lineno, fields) in enumerate(rows):
        for facet, field in enumerate(fields):
            if field == "_" and tri._adj[4 * tet + facet] >= 0:
                raise InconsistentGluing(
                    f"line {lineno}: facet {facet} marked unglued but glued from the other side"
                )
    return tri


def format_gluing_table(tri: Triangulation, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    for t in range(tri.size):
        entries = []
        for f in range(4):
            g = tri._adj[4 * t + f]
            if g < 0:
                entries.append("_")
            else:
                s, q = divmod(g, 24)
                entries.append(f"{s}:{PERMS[q][f]}:{q}")
        lines.append(" ".join(entries))
    return "\n".join(lines) + "\n"


def disjoint_union(*tris: Triangulation) -> Triangulation:
    adj = []
    offset = 0
    for tri in tris:
        adj.extend(g if g < 0 else g + 24 * offset for g in tri._adj)
        offset += tri.size
    return Triangulation(adj)
