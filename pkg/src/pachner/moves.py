"""The 2-3, 3-2, 0-2 and 2-0 moves on closed triangulations.

Sites are addressed by skeleton-class indices (see :class:`~pachner.kernel.Skeleton`
for the ordering rule), so a site only makes sense for the triangulation it
was enumerated on.  Moves never modify their input: surviving tetrahedra keep
their relative order and new tetrahedra are appended.

0-2 move at ``(edge, i, j)``: with the embeddings of the edge listed in walk
order, slot ``k`` is the triangle crossed when walking from embedding ``k``
to embedding ``k + 1``.  The move cuts the triangulation open along slots
``i`` and ``j`` and fills the cavity with a two-tetrahedron pillow.  In each
pillow tetrahedron vertices 0 and 1 sit on the ends of the chosen edge,
vertices 2 and 3 on the far corners of slots ``i`` and ``j`` (so edge 2-3 is
the new degree-2 edge), facet 3 faces slot ``i`` and facet 2 faces slot
``j``; the pillow tetrahedra are glued to each other by the identity on
facets 0 and 1.

2-0 move at a degree-2 edge: the two tetrahedra around the edge are removed
and, on each side, the two outer triangles that face each other across the
pillow are glued directly together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import IneligibleSite, NotClosed, ParseError, WouldCreateInvalid
from .kernel import EDGE_NUMBER, SWAP23, Skeleton, Triangulation
from .perm import COMPOSE, INVERSE, PERMS, from_images


class MoveKind(Enum):
    M23 = "2-3"
    M32 = "3-2"
    M02 = "0-2"
    M20 = "2-0"

    @property
    def inverse(self) -> MoveKind:
        return _INVERSE_KIND[self]

    @property
    def delta(self) -> int:
        """Change in the number of tetrahedra."""
        return _DELTA[self]

    def __str__(self) -> str:
        return self.value


_INVERSE_KIND = {
    MoveKind.M23: MoveKind.M32, MoveKind.M32: MoveKind.M23,
    MoveKind.M02: MoveKind.M20, MoveKind.M20: MoveKind.M02,
}
_DELTA = {MoveKind.M23: 1, MoveKind.M32: -1, MoveKind.M02: 2, MoveKind.M20: -2}
ALL_KINDS = (MoveKind.M23, MoveKind.M32, MoveKind.M02, MoveKind.M20)


@dataclass(frozen=True)
class MoveSite:
    """A located move.

    ``locus`` is a triangle class for 2-3 and an edge class for the other
    kinds; ``slots`` is only used by 0-2.
    """

    kind: MoveKind
    locus: int
    slots: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.kind is MoveKind.M23:
            return f"{self.kind} t{self.locus}"
        if self.kind is MoveKind.M02:
            return f"{self.kind} e{self.locus}:{self.slots[0]},{self.slots[1]}"
        return f"{self.kind} e{self.locus}"

    @classmethod
    def parse(cls, text: str) -> MoveSite:
        m = re.fullmatch(r"\s*(2-3|3-2|0-2|2-0)\s+([te])(\d+)(?::(\d+),(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad move step {text!r}")
        kind = MoveKind(m.group(1))
        want = "t" if kind is MoveKind.M23 else "e"
        has_slots = m.group(4) is not None
        if m.group(2) != want or has_slots != (kind is MoveKind.M02):
            raise ParseError(f"locus does not match move kind in {text!r}")
        slots = (int(m.group(4)), int(m.group(5))) if has_slots else None
        return cls(kind, int(m.group(3)), slots)


# ---------------------------------------------------------------------------
# Construction helpers


def _splice(tri: Triangulation, removed, new_count, internal, external) -> Triangulation:
    """Replace the tetrahedra in ``removed`` by ``new_count`` new ones.

    ``internal`` lists ``(j, facet, j2, perm)`` gluings between new
    tetrahedra.  ``external`` maps each outward facet ``(old_tet, facet)`` of
    the removed region to ``(j, facet, sigma)`` where ``sigma`` takes the new
    tetrahedron's labels to the old one's.
    """
    adj = tri.adjacency
    n = tri.size
    gone = set(removed)
    remap = [-1] * n
    k = 0
    for t in range(n):
        if t not in gone:
            remap[t] = k
            k += 1
    base = k
    out = [-1] * (4 * (base + new_count))
    for t in range(n):
        nt = remap[t]
        if nt < 0:
            continue
        for f in range(4):
            s, q = divmod(adj[4 * t + f], 24)
            if remap[s] >= 0:
                out[4 * nt + f] = 24 * remap[s] + q
    for j, g, j2, perm in internal:
        out[4 * (base + j) + g] = 24 * (base + j2) + perm
        out[4 * (base + j2) + PERMS[perm][g]] = 24 * (base + j) + INVERSE[perm]
    for (ot, of), (j, g, sigma) in external.items():
        s, q = divmod(adj[4 * ot + of], 24)
        inside = external.get((s, PERMS[q][of]))
        if inside is not None:
            j2, _, sigma2 = inside
            out[4 * (base + j) + g] = 24 * (base + j2) + COMPOSE[INVERSE[sigma2]][COMPOSE[q][sigma]]
        else:
            perm = COMPOSE[q][sigma]
            dest = remap[s]
            out[4 * (base + j) + g] = 24 * dest + perm
            out[4 * dest + PERMS[perm][g]] = 24 * (base + j) + INVERSE[perm]
    return Triangulation(out)


def _two_three(tri: Triangulation, skel: Skeleton, tri_class: int) -> Triangulation:
    (t0, f0), (t1, _) = skel.triangles[tri_class]
    p = tri.adjacency[4 * t0 + f0] % 24
    x = [w for w in range(4) if w != f0]
    external = {}
    internal = []
    for i in range(3):
        xi, xj, xk = x[i], x[(i + 1) % 3], x[(i + 2) % 3]
        external[(t0, xi)] = (i, 1, from_images(f0, xi, xj, xk))
        rho = from_images(xi, f0, xj, xk)
        external[(t1, PERMS[p][xi])] = (i, 0, COMPOSE[p][rho])
        internal.append((i, 2, (i + 1) % 3, from_images(0, 1, 3, 2)))
    return _splice(tri, (t0, t1), 3, internal, external)


def _three_two(tri: Triangulation, skel: Skeleton, edge: int) -> Triangulation:
    emb = skel.edges[edge]
    external = {}
    for k, (t, q) in enumerate(emb):
        e0, e1, a, b = PERMS[q]
        top = [0] * 4
        top[0], top[1 + k], top[1 + (k - 1) % 3], top[1 + (k + 1) % 3] = e0, a, b, e1
        bottom = [0] * 4
        bottom[0], bottom[1 + k], bottom[1 + (k - 1) % 3], bottom[1 + (k + 1) % 3] = e1, a, b, e0
        external[(t, e1)] = (0, 1 + (k + 1) % 3, from_images(*top))
        external[(t, e0)] = (1, 1 + (k + 1) % 3, from_images(*bottom))
    return _splice(tri, [t for t, _ in emb], 2, [(0, 0, 1, 0)], external)


def _zero_two(tri: Triangulation, skel: Skeleton, edge: int, i: int, j: int) -> Triangulation:
    emb = skel.edges[edge]
    d = len(emb)
    n = tri.size
    out = list(tri.adjacency) + [-1] * 8
    p0, p1 = n, n + 1

    def glue(a, fa, b, perm):
        out[4 * a + fa] = 24 * b + perm
        out[4 * b + PERMS[perm][fa]] = 24 * a + INVERSE[perm]

    ti, qi = emb[i]
    ti1, qi1 = emb[(i + 1) % d]
    tj, qj = emb[j]
    tj1, qj1 = emb[(j + 1) % d]
    glue(p0, 3, ti, qi)
    glue(p0, 2, tj1, qj1)
    glue(p1, 3, ti1, COMPOSE[qi1][SWAP23])
    glue(p1, 2, tj, COMPOSE[qj][SWAP23])
    glue(p0, 0, p1, 0)
    glue(p0, 1, p1, 0)
    return Triangulation(out)


def _two_zero(tri: Triangulation, skel: Skeleton, edge: int) -> Triangulation:
    (t0, q0), (t1, q1) = skel.edges[edge]
    adj = tri.adjacency
    mu = COMPOSE[COMPOSE[q1][SWAP23]][INVERSE[q0]]
    n = tri.size
    remap = [-1] * n
    k = 0
    for t in range(n):
        if t != t0 and t != t1:
            remap[t] = k
            k += 1
    out = [-1] * (4 * k)
    for t in range(n):
        nt = remap[t]
        if nt < 0:
            continue
        for f in range(4):
            s, q = divmod(adj[4 * t + f], 24)
            if remap[s] >= 0:
                out[4 * nt + f] = 24 * remap[s] + q
    for f in PERMS[q0][:2]:
        zt, gx = divmod(adj[4 * t0 + f], 24)
        wt, gy = divmod(adj[4 * t1 + PERMS[mu][f]], 24)
        perm = COMPOSE[gy][COMPOSE[mu][INVERSE[gx]]]
        zf = PERMS[gx][f]
        if (zt, zf) == (wt, PERMS[perm][zf]):
            raise WouldCreateInvalid("2-0 move would glue a facet to itself")
        out[4 * remap[zt] + zf] = 24 * remap[wt] + perm
        out[4 * remap[wt] + PERMS[perm][zf]] = 24 * remap[zt] + INVERSE[perm]
    return Triangulation(out)


# ---------------------------------------------------------------------------
# Eligibility


def _can_23(skel: Skeleton, tri_class: int) -> bool:
    (t0, _), (t1, _) = skel.triangles[tri_class]
    return t0 != t1


def _can_32(skel: Skeleton, edge: int) -> bool:
    emb = skel.edges[edge]
    return (len(emb) == 3 and edge not in skel.invalid_edges
            and len({t for t, _ in emb}) == 3)


def _can_20_locally(skel: Skeleton, edge: int) -> bool:
    emb = skel.edges[edge]
    if len(emb) != 2 or edge in skel.invalid_edges:
        return False
    (t0, q0), (t1, q1) = emb
    if t0 == t1:
        return False
    # The edges opposite the pillow edge are merged: they must be distinct.
    i0, i1 = PERMS[q0], PERMS[q1]
    if skel.edge_of[6 * t0 + EDGE_NUMBER[i0[2]][i0[3]]] == skel.edge_of[6 * t1 + EDGE_NUMBER[i1[2]][i1[3]]]:
        return False
    tof = skel.triangle_of
    outer = {tof[4 * t0 + i0[0]], tof[4 * t0 + i0[1]], tof[4 * t1 + i1[0]], tof[4 * t1 + i1[1]]}
    return len(outer) == 4


def _slot_triangle(skel: Skeleton, edge: int, k: int) -> int:
    t, q = skel.edges[edge][k]
    return skel.triangle_of[4 * t + PERMS[q][3]]


def _can_02_locally(skel: Skeleton, edge: int, i: int, j: int) -> bool:
    d = len(skel.edges[edge])
    if edge in skel.invalid_edges or not (0 <= i < j < d):
        return False
    return _slot_triangle(skel, edge, i) != _slot_triangle(skel, edge, j)


def _kind_profile(tri: Triangulation):
    # Validity plus the multiset of link types; material and ideal vertex
    # counts are determined by the latter.
    return (bool(tri.skeleton().invalid_edges),
            tuple(sorted((lk.euler_characteristic, lk.orientable, lk.connected) for lk in tri.links())))


def _checked(tri: Triangulation, result: Triangulation) -> Triangulation | None:
    return result if _kind_profile(result) == _kind_profile(tri) else None


def _require_closed(tri: Triangulation) -> Skeleton:
    if not tri.is_closed():
        raise NotClosed("moves need a closed triangulation")
    return tri.skeleton()


# ---------------------------------------------------------------------------
# Public operations


def successors(tri: Triangulation, kinds=ALL_KINDS, max_size: int | None = None):
    """Every eligible site of the given kinds together with its result.

    Sites come in the fixed order 2-3, 3-2, 0-2, 2-0, each by increasing
    locus.  With ``max_size`` set, moves that would exceed it are skipped.
    """
    skel = _require_closed(tri)
    kinds = set(kinds)
    n = tri.size
    out = []
    room = (lambda kind: True) if max_size is None else (lambda kind: n + kind.delta <= max_size)
    if MoveKind.M23 in kinds and room(MoveKind.M23):
        for k in range(len(skel.triangles)):
            if _can_23(skel, k):
                out.append((MoveSite(MoveKind.M23, k), _two_three(tri, skel, k)))
    if MoveKind.M32 in kinds:
        for e in range(len(skel.edges)):
            if _can_32(skel, e):
                out.append((MoveSite(MoveKind.M32, e), _three_two(tri, skel, e)))
    if MoveKind.M02 in kinds and room(MoveKind.M02):
        for e, emb in enumerate(skel.edges):
            for i in range(len(emb)):
                for j in range(i + 1, len(emb)):
                    if _can_02_locally(skel, e, i, j):
                        res = _checked(tri, _zero_two(tri, skel, e, i, j))
                        if res is not None:
                            out.append((MoveSite(MoveKind.M02, e, (i, j)), res))
    if MoveKind.M20 in kinds:
        for e in range(len(skel.edges)):
            if _can_20_locally(skel, e):
                try:
                    res = _checked(tri, _two_zero(tri, skel, e))
                except WouldCreateInvalid:
                    res = None
                if res is not None:
                    out.append((MoveSite(MoveKind.M20, e), res))
    return out


def enumerate_moves(tri: Triangulation, kinds=ALL_KINDS) -> list[MoveSite]:
    """All eligible sites of the given kinds, in deterministic order."""
    kinds = set(kinds)
    skel = _require_closed(tri)
    sites = []
    if MoveKind.M23 in kinds:
        sites += [MoveSite(MoveKind.M23, k) for k in range(len(skel.triangles)) if _can_23(skel, k)]
    if MoveKind.M32 in kinds:
        sites += [MoveSite(MoveKind.M32, e) for e in range(len(skel.edges)) if _can_32(skel, e)]
    slow = kinds & {MoveKind.M02, MoveKind.M20}
    if slow:
        sites += [site for site, _ in successors(tri, slow)]
    return sites


def apply(tri: Triangulation, site: MoveSite) -> Triangulation:
    """Perform one move, returning a new triangulation."""
    skel = _require_closed(tri)
    kind = site.kind
    if kind is MoveKind.M23:
        if not (0 <= site.locus < len(skel.triangles) and _can_23(skel, site.locus)):
            raise IneligibleSite(f"{site} is not eligible")
        return _two_three(tri, skel, site.locus)
    if not 0 <= site.locus < len(skel.edges):
        raise IneligibleSite(f"{site}: no such edge")
    if kind is MoveKind.M32:
        if not _can_32(skel, site.locus):
            raise IneligibleSite(f"{site} is not eligible")
        return _three_two(tri, skel, site.locus)
    if kind is MoveKind.M02:
        if site.slots is None or not _can_02_locally(skel, site.locus, *site.slots):
            raise IneligibleSite(f"{site} is not eligible")
        result = _checked(tri, _zero_two(tri, skel, site.locus, *site.slots))
    else:
        if not _can_20_locally(skel, site.locus):
            raise IneligibleSite(f"{site} is not eligible")
        result = _checked(tri, _two_zero(tri, skel, site.locus))
    if result is None:
        raise WouldCreateInvalid(f"{site} would change the vertex or edge structure")
    return result


_NEW_TETS = {MoveKind.M23: 3, MoveKind.M32: 2, MoveKind.M02: 2, MoveKind.M20: 0}


def inverse_site(tri: Triangulation, site: MoveSite, result: Triangulation | None = None) -> MoveSite:
    """The site on ``apply(tri, site)`` that undoes the move.

    For 2-3, 3-2 and 0-2 the created simplex is read off directly (new
    tetrahedra are always appended); a 2-0 is undone by the first 0-2 site
    whose result has the original signature.
    """
    if result is None:
        result = apply(tri, site)
    skel = result.skeleton()
    base = result.size - _NEW_TETS[site.kind]
    if site.kind is MoveKind.M23:
        return MoveSite(MoveKind.M32, skel.edge_of[6 * base + EDGE_NUMBER[0][1]])
    if site.kind is MoveKind.M02:
        return MoveSite(MoveKind.M20, skel.edge_of[6 * base + EDGE_NUMBER[2][3]])
    if site.kind is MoveKind.M32:
        return MoveSite(MoveKind.M23, skel.triangle_of[4 * base + 0])
    target = tri.signature()
    for cand, res in successors(result, (MoveKind.M02,)):
        if res.signature() == target:
            return cand
    raise IneligibleSite(f"no 0-2 site undoes {site}")


# ---------------------------------------------------------------------------
# Move sequences


class SequenceClass(Enum):
    MONOTONIC = "monotonic"
    SEMI_MONOTONIC = "semi-monotonic"
    BENIGN = "benign"
    UNSTRUCTURED = "unstructured"

    def at_least(self, other: SequenceClass) -> bool:
        """Whether this class implies ``other`` (monotonic implies all)."""
        order = list(SequenceClass)
        return order.index(self) <= order.index(other)


_LETTER = {MoveKind.M23: "u", MoveKind.M32: "d", MoveKind.M20: "c", MoveKind.M02: "x"}
_PATTERNS = (
    (SequenceClass.MONOTONIC, re.compile(r"u*d*")),
    (SequenceClass.SEMI_MONOTONIC, re.compile(r"u*c*d*")),
    # Every 2-0 sits in one block right after the last 2-3; with no 2-3 at
    # all the 2-0 block must come first.
    (SequenceClass.BENIGN, re.compile(r"(?:[ud]*u)?c*d*")),
)


@dataclass
class MoveSequence:
    """Moves leading from ``source`` to ``target`` (both signatures).

    Step ``k`` is addressed on the canonical representative
    ``decode(encode(T_k))`` of the triangulation reached after ``k`` steps,
    so a sequence replays from any triangulation isomorphic to its source.
    """

    source: str
    target: str
    steps: list[MoveSite] = field(default_factory=list)

    @property
    def kinds(self) -> list[MoveKind]:
        return [s.kind for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def dumps(self) -> str:
        lines = [f"sequence {self.source} {self.target}"]
        lines += [str(s) for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> MoveSequence:
        lines = [ln for ln in (raw.strip() for raw in text.splitlines())
                 if ln and not ln.startswith("#")]
        if not lines:
            raise ParseError("empty sequence file")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "sequence":
            raise ParseError(f"bad sequence header {lines[0]!r}")
        return cls(head[1], head[2], [MoveSite.parse(ln) for ln in lines[1:]])


def classify_sequence(seq) -> SequenceClass:
    """Strongest class matched by the kind-string of ``seq``.

    Accepts a :class:`MoveSequence` or any iterable of :class:`MoveKind`.
    """
    kinds = seq.kinds if isinstance(seq, MoveSequence) else list(seq)
    word = "".join(_LETTER[k] for k in kinds)
    for cls, pattern in _PATTERNS:
        if pattern.fullmatch(word):
            return cls
    return SequenceClass.UNSTRUCTURED


def check_sequence(start: Triangulation, seq: MoveSequence) -> str | None:
    """Replay ``seq`` from ``start``; return ``None`` or a diagnostic."""
    from .signature import decode

    try:
        if start.signature() != seq.source:
            return "start triangulation does not match the sequence source"
        cur = decode(seq.source)
        for k, site in enumerate(seq.steps, 1):
            try:
                cur = apply(cur, site)
            except IneligibleSite as exc:
                return f"step {k}: {exc}"
            cur = decode(cur.signature())
    except Exception as exc:  # noqa: BLE001 - any failure means "does not verify"
        return f"replay failed: {exc}"
    if cur.signature() != seq.target:
        return "final triangulation does not match the sequence target"
    return None


def verify_sequence(start: Triangulation, seq: MoveSequence) -> bool:
    return check_sequence(start, seq) is None
