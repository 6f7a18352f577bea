import random

import pytest

from pachner import fixtures
from pachner.moves import MoveKind, successors
from pachner.search import scramble


@pytest.fixture
def dt():
    return fixtures.double_tetrahedron()


@pytest.fixture
def rp3():
    return fixtures.projective_space()


@pytest.fixture
def fig8():
    return fixtures.figure_eight()


@pytest.fixture
def reversed_edge():
    return fixtures.reversed_edge()


def scrambled_pairs(seed_tri, count, rng_seed, max_walk=8, max_size=6):
    """Distinct, equal-size pairs of random-walk endpoints from ``seed_tri``."""
    rng = random.Random(rng_seed)
    pairs, pool, seen = [], {}, set()
    for _ in range(500 * count):
        if len(pairs) == count:
            break
        walk = rng.randint(1, max_walk)
        tri = scramble(seed_tri, walk, max_size, rng.randrange(2**32))
        bucket = pool.setdefault(tri.size, [])
        for other in bucket:
            key = tuple(sorted((other.signature(), tri.signature())))
            if key[0] != key[1] and key not in seen:
                seen.add(key)
                pairs.append((other, tri))
                bucket.remove(other)
                break
        else:
            bucket.append(tri)
    if len(pairs) < count:
        raise RuntimeError(f"only {len(pairs)} distinct pairs found")
    return pairs


def random_walk(tri, steps, rng, kinds=(MoveKind.M23, MoveKind.M32), max_size=7):
    """Random walk that stops early rather than fail when stuck."""
    for _ in range(steps):
        options = successors(tri, kinds, max_size)
        if not options:
            break
        tri = rng.choice(options)[1]
    return tri
