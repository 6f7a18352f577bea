"""Canonical isomorphism signatures.

For every connected component and every anchor (start tetrahedron, start
vertex labelling) we relabel the component breadth-first: facets of each
relabelled tetrahedron are visited in order 0-3, unseen neighbours get the
next free index and the labelling that makes the crossing gluing the
identity.  Each facet contributes one entry ``(dest, dest_facet, perm_code)``
in the new labels, and the lexicographically least entry sequence over all
anchors is the canonical form.

Text layout of one component, all characters drawn from :data:`ALPHABET`
(value = position in the alphabet, six bits per character):

* one character ``g`` giving the number of size digits, then ``g``
  characters holding the tetrahedron count ``n`` in little-endian base 64;
* a bit stream, least significant bit first, holding ``4n`` entries in
  canonical order.  Each entry is the destination index in
  ``w = (n - 1).bit_length()`` bits, then the destination facet in 2 bits,
  then the permutation code in 5 bits.  The stream is zero-padded to a
  multiple of 6 bits and emitted 6 bits per character.

A disconnected triangulation is the concatenation of its component
signatures in sorted order; the empty triangulation is ``"a"``.
"""

from __future__ import annotations

from .errors import MalformedSignature, NotClosed
from .kernel import Triangulation, check_involution
from .perm import COMPOSE, INVERSE, PERMS

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_VALUE = {c: i for i, c in enumerate(ALPHABET)}

# Entry keys order exactly like (dest, facet, perm) tuples.
_IMG = PERMS


def _relabel_key(adj, n, start, code, best):
    """BFS-relabel from one anchor, abandoning as soon as it loses to ``best``.

    Returns ``(keys, order, labels)`` when this anchor ties or beats ``best``,
    else ``None``.
    """
    compose, inverse, img_of = COMPOSE, INVERSE, _IMG
    order = [start]
    index = [-1] * n
    index[start] = 0
    labels = [code]
    keys = []
    better = best is None
    pos = 0
    for ot in order:
        r = labels[index[ot]]
        img = img_of[r]
        base = 4 * ot
        for f in (0, 1, 2, 3):
            g = adj[base + img[f]]
            s = g // 24
            q = g - 24 * s
            j = index[s]
            if j < 0:
                j = index[s] = len(order)
                order.append(s)
                labels.append(compose[q][r])
                key = (j * 4 + f) * 24
            else:
                p = compose[inverse[labels[j]]][compose[q][r]]
                key = (j * 4 + img_of[p][f]) * 24 + p
            if not better:
                b = best[pos]
                if key > b:
                    return None
                if key < b:
                    better = True
            keys.append(key)
            pos += 1
    return keys, order, labels


def canonical_form(tri: Triangulation, component: list[int] | None = None):
    """Least relabelling of one connected component.

    Returns ``(keys, order, labels)``: the entry keys, the old tetrahedron
    behind each new index, and for each new index the permutation code
    taking new vertex labels to old ones.
    """
    adj = tri.adjacency
    n = tri.size
    comp = component if component is not None else range(tri.size)
    best = None
    for start in comp:
        for code in range(24):
            got = _relabel_key(adj, n, start, code, best[0] if best else None)
            if got is not None:
                best = got
    return best


def _pack(n: int, keys: list[int]) -> str:
    digits = []
    m = n
    while m:
        digits.append(m & 63)
        m >>= 6
    out = [ALPHABET[len(digits)]] + [ALPHABET[d] for d in digits]
    width = (n - 1).bit_length()
    step = width + 7
    acc = 0
    for i, key in enumerate(keys):
        rest, perm = divmod(key, 24)
        dest, facet = divmod(rest, 4)
        acc |= (dest | facet << width | perm << (width + 2)) << (i * step)
    nbits = step * len(keys)
    for i in range(0, nbits, 6):
        out.append(ALPHABET[(acc >> i) & 63])
    return "".join(out)


def encode(tri: Triangulation) -> str:
    """Canonical signature of a closed triangulation."""
    if not tri.is_closed():
        raise NotClosed("signatures are defined for closed triangulations only")
    if tri.size == 0:
        return "a"
    comps = tri.components()
    parts = []
    for comp in comps:
        keys, _, _ = canonical_form(tri, comp)
        parts.append(_pack(len(comp), keys))
    parts.sort()
    return "".join(parts)


def canonical_isomorphism(tri: Triangulation) -> tuple[list[int], list[int]]:
    """Isomorphism taking a connected ``tri`` onto ``decode(encode(tri))``.

    Returns ``(tet_map, vertex_maps)`` in the form :meth:`Triangulation.relabel`
    expects.
    """
    comps = tri.components()
    if len(comps) != 1:
        raise ValueError("canonical_isomorphism needs a connected triangulation")
    _, order, labels = canonical_form(tri)
    tet_map = [0] * tri.size
    vertex_maps = [0] * tri.size
    for new, (old, lab) in enumerate(zip(order, labels)):
        tet_map[old] = new
        vertex_maps[old] = INVERSE[lab]
    return tet_map, vertex_maps


def _read_component(sig: str, pos: int) -> tuple[list[int], int, int]:
    try:
        g = _VALUE[sig[pos]]
        n = 0
        for i in range(g):
            n |= _VALUE[sig[pos + 1 + i]] << (6 * i)
    except (KeyError, IndexError):
        raise MalformedSignature(f"bad size field at offset {pos}") from None
    if g and n == 0 or g and (n >> (6 * (g - 1))) == 0:
        raise MalformedSignature("size field has a redundant leading digit")
    pos += 1 + g
    if n == 0:
        return [], 0, pos
    width = (n - 1).bit_length()
    step = width + 7
    nbits = step * 4 * n
    nchars = -(-nbits // 6)
    chunk = sig[pos:pos + nchars]
    if len(chunk) != nchars:
        raise MalformedSignature("signature is truncated")
    acc = 0
    try:
        for i, c in enumerate(chunk):
            acc |= _VALUE[c] << (6 * i)
    except KeyError:
        raise MalformedSignature(f"character outside the alphabet in {sig!r}") from None
    if acc >> nbits:
        raise MalformedSignature("non-zero padding bits")
    adj = []
    mask = (1 << width) - 1
    for i in range(4 * n):
        bits = acc >> (i * step)
        dest = bits & mask
        facet = (bits >> width) & 3
        perm = (bits >> (width + 2)) & 31
        if dest >= n or perm >= 24 or PERMS[perm][i % 4] != facet:
            raise MalformedSignature(f"entry {i} is out of range")
        adj.append(24 * dest + perm)
    return adj, n, pos + nchars


def decode(sig: str) -> Triangulation:
    """Rebuild the canonical representative of a signature."""
    if not isinstance(sig, str) or not sig:
        raise MalformedSignature("empty signature")
    bad = set(sig) - set(ALPHABET)
    if bad:
        raise MalformedSignature(f"characters outside the alphabet: {''.join(sorted(bad))!r}")
    if sig == "a":
        return Triangulation(())
    adj: list[int] = []
    pos = 0
    while pos < len(sig):
        part, n, pos = _read_component(sig, pos)
        if n == 0:
            raise MalformedSignature("empty component inside a signature")
        offset = len(adj) // 4
        adj.extend(g + 24 * offset for g in part)
    try:
        check_involution(adj)
    except Exception as exc:
        raise MalformedSignature(f"gluings are inconsistent: {exc}") from None
    return Triangulation(adj)


def is_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """Decide isomorphism by exhaustive rooted search.

    Independent of :func:`encode`; it serves as the oracle for signature
    tests.  Components are matched greedily, which is sound because
    isomorphism is an equivalence relation.
    """
    if a.size != b.size:
        return False
    if not (a.is_closed() and b.is_closed()):
        raise NotClosed("isomorphism test needs closed triangulations")
    ca, cb = a.components(), b.components()
    if sorted(map(len, ca)) != sorted(map(len, cb)):
        return False
    unused = list(cb)
    for comp in ca:
        for i, other in enumerate(unused):
            if len(other) == len(comp) and _rooted_match(a, comp[0], b, other):
                del unused[i]
                break
        else:
            return False
    return True


def _rooted_match(a: Triangulation, root: int, b: Triangulation, targets: list[int]) -> bool:
    adj_a, adj_b = a.adjacency, b.adjacency
    for target in targets:
        for code in range(24):
            tet = {root: target}
            vert = {root: code}  # a-labels -> b-labels
            stack = [root]
            ok = True
            while stack and ok:
                t = stack.pop()
                for f in range(4):
                    s, q = divmod(adj_a[4 * t + f], 24)
                    mt, mv = tet[t], vert[t]
                    fb = PERMS[mv][f]
                    sb, qb = divmod(adj_b[4 * mt + fb], 24)
                    want = COMPOSE[qb][mv]  # s-labels -> b-labels, via the gluing
                    want = COMPOSE[want][INVERSE[q]]
                    if s in tet:
                        if tet[s] != sb or vert[s] != want:
                            ok = False
                            break
                    else:
                        tet[s] = sb
                        vert[s] = want
                        stack.append(s)
            if ok and len(set(tet.values())) == len(tet):
                return True
    return False
