import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_walk
from pachner import (
    MalformedSignature,
    NotClosed,
    Triangulation,
    build,
    decode,
    disjoint_union,
    encode,
    fixtures,
    is_isomorphic,
    successors,
)
from pachner.signature import ALPHABET, canonical_isomorphism

GOLDEN = {
    "double_tetrahedron": "bcbmqbhaGaeya",
    "projective_space": "bcYatb567Jeml",
    "figure_eight": "bcbu0pBcGxIXd",
    "reversed_edge": "bbD48Xd",
}


def pack_reference(entries):
    """Independent text packing of a brute-force canonical entry list."""
    n = len(entries) // 4
    digits = []
    m = n
    while m:
        digits.append(m % 64)
        m //= 64
    width = (n - 1).bit_length()
    bits = []
    for dest, facet, perm in entries:
        for value, size in ((dest, width), (facet, 2), (perm, 5)):
            bits += [(value >> i) & 1 for i in range(size)]
    bits += [0] * (-len(bits) % 6)
    chars = [sum(bits[i + k] << k for k in range(6)) for i in range(0, len(bits), 6)]
    return "".join(ALPHABET[v] for v in [len(digits)] + digits + chars)


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_signatures(name):
    tri = getattr(fixtures, name)()
    assert encode(tri) == GOLDEN[name]
    assert pack_reference(oracles.brute_canonical(tri.adjacency)) == GOLDEN[name]


def test_alphabet():
    assert len(ALPHABET) == 64 == len(set(ALPHABET))
    assert ALPHABET[:3] == "abc" and ALPHABET[-2:] == "+-"


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_relabel_invariance(name):
    tri = getattr(fixtures, name)()
    rng = random.Random(name)
    for _ in range(100):
        other = Triangulation(oracles.random_relabel(tri.adjacency, rng))
        assert encode(other) == GOLDEN[name]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.integers(0, 2**32))
def test_walk_signatures_match_brute_force(steps, seed):
    rng = random.Random(seed)
    tri = random_walk(fixtures.projective_space(), steps, rng, max_size=5)
    assert encode(tri) == pack_reference(oracles.brute_canonical(tri.adjacency))
    assert encode(decode(encode(tri))) == encode(tri)
    relabelled = Triangulation(oracles.random_relabel(tri.adjacency, rng))
    assert encode(relabelled) == encode(tri)


def test_decode_round_trip(rp3):
    tri = random_walk(rp3, 6, random.Random(2))
    sig = encode(tri)
    back = decode(sig)
    assert encode(back) == sig and is_isomorphic(back, tri)
    tet_map, vmaps = canonical_isomorphism(tri)
    assert tri.relabel(tet_map, vmaps) == back


def test_non_isomorphic_pairs_differ(dt, rp3, fig8):
    assert len({encode(dt), encode(rp3), encode(fig8)}) == 3
    assert not is_isomorphic(dt, rp3)
    grown = successors(dt)[0][1]
    assert not is_isomorphic(dt, grown) and encode(dt) != encode(grown)


def test_disconnected_and_empty(dt, rp3):
    a, b = disjoint_union(dt, rp3), disjoint_union(rp3, dt)
    assert encode(a) == encode(b) == "".join(sorted([encode(dt), encode(rp3)]))
    assert is_isomorphic(a, b)
    assert encode(decode(encode(a))) == encode(a)
    assert encode(Triangulation(())) == "a" and decode("a").size == 0


@pytest.mark.parametrize("bad", ["", "ab!", "bc", "bcbmqbhaGaey", "bcbmqbhaGaeyb", "c"])
def test_malformed(bad):
    with pytest.raises(MalformedSignature):
        decode(bad)


def test_encode_needs_closed():
    with pytest.raises(NotClosed):
        encode(build(1, []))


def test_is_isomorphic_agrees_with_oracle():
    rng = random.Random(11)
    pool = [random_walk(fixtures.projective_space(), rng.randint(0, 6), rng, max_size=4)
            for _ in range(40)]
    for _ in range(300):
        a, b = rng.choice(pool), rng.choice(pool)
        if a.size != b.size:
            continue
        b = Triangulation(oracles.random_relabel(b.adjacency, rng))
        expect = oracles.isomorphic_connected(a.adjacency, b.adjacency)
        assert is_isomorphic(a, b) == expect == (encode(a) == encode(b))
