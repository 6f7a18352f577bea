import random

import pytest

from conftest import random_walk, scrambled_pairs
from pachner import (
    IneligibleSeed,
    MoveKind,
    NoEligibleMove,
    SearchConfig,
    SeedMismatch,
    SequenceClass,
    Strategy,
    classify_sequence,
    compare_strategies,
    connect,
    decode,
    fixtures,
    scramble,
    successors,
    validate,
    verify_sequence,
    z2_homology_ranks,
)
from pachner.unionfind import UnionFind

PROMISE = {
    Strategy.BLIND: SequenceClass.UNSTRUCTURED,
    Strategy.MONOTONIC: SequenceClass.MONOTONIC,
    Strategy.SEMI_MONOTONIC: SequenceClass.SEMI_MONOTONIC,
}


@pytest.fixture(scope="module")
def small_pairs():
    return scrambled_pairs(fixtures.double_tetrahedron(), 4, rng_seed=5, max_size=5)


def test_union_find():
    uf = UnionFind(5)
    assert uf.components == 5
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.connected(0, 1) and not uf.connected(1, 3)
    assert uf.components == 3
    uf.union(1, 4)
    assert uf.connected(0, 3) and uf.components == 2


@pytest.mark.parametrize("strategy", list(Strategy))
def test_identical_seeds(strategy, rp3):
    result = connect([rp3, rp3], SearchConfig(strategy, emit_paths=True))
    assert result.connected and result.height == 0
    assert [len(seq) for seq in result.paths.values()] == [0]
    assert result.nodes_23_32 == 1 and result.nodes_20 == 0
    assert not result.terminated_early


def test_seed_errors(dt, rp3, fig8, reversed_edge):
    with pytest.raises(SeedMismatch):
        connect([dt, successors(dt)[0][1]])
    with pytest.raises(SeedMismatch):
        connect([dt, rp3])
    with pytest.raises(IneligibleSeed):
        connect([reversed_edge])
    with pytest.raises(SeedMismatch):
        connect([])
    with pytest.raises(ValueError):
        SearchConfig(node_limit=0)
    assert connect([fig8]).connected


@pytest.mark.parametrize("strategy", list(Strategy))
def test_paths_verify_and_classify(strategy, small_pairs):
    for a, b in small_pairs:
        result = connect([a, b], SearchConfig(strategy, max_extra_tets=6, emit_paths=True))
        assert result.connected
        assert set(result.paths) == {(0, 1)} or set(result.paths) == {(1, 0)}
        for seq in result.paths.values():
            assert verify_sequence(decode(seq.source), seq)
            assert classify_sequence(seq).at_least(PROMISE[strategy])
        if strategy is not Strategy.SEMI_MONOTONIC:
            assert result.nodes_20 == 0


def test_three_seeds_share_one_component(rp3):
    rng = random.Random(4)
    seeds = []
    while len({s.signature() for s in seeds}) < 3:
        cand = scramble(rp3, 2, 4, rng.randrange(1000))
        if cand.size == 4 and cand.signature() not in {s.signature() for s in seeds}:
            seeds.append(cand)
    result = connect(seeds, SearchConfig(Strategy.SEMI_MONOTONIC, 6, emit_paths=True))
    assert result.connected and len(result.paths) == 2
    linked = UnionFind(3)
    for (i, j), seq in result.paths.items():
        assert verify_sequence(seeds[i], seq)
        linked.union(i, j)
    assert linked.components == 1


def test_up_then_down_at_another_site():
    # The double tetrahedron has a single degree-3 edge after any 2-3 move, so
    # look for a triangulation where a 2-3 move creates a second 3-2 option.
    rng = random.Random(1)
    for _ in range(200):
        tri = random_walk(fixtures.projective_space(), rng.randint(0, 5), rng, max_size=5)
        for _, up in successors(tri, (MoveKind.M23,)):
            for _, down in successors(up, (MoveKind.M32,)):
                if down.signature() == tri.signature():
                    continue
                flat = connect([tri, down], SearchConfig(Strategy.BLIND, 0))
                if flat.connected:
                    continue
                result = connect([tri, down], SearchConfig(Strategy.BLIND, 1, emit_paths=True))
                assert result.connected and result.height == 1
                (seq,) = result.paths.values()
                assert len(seq) == 2 and verify_sequence(decode(seq.source), seq)
                return
    pytest.fail("no suitable triangulation found")


def test_node_limit(small_pairs):
    a, b = small_pairs[0]
    for strategy in Strategy:
        result = connect([a, b], SearchConfig(strategy, 6, node_limit=1))
        assert result.terminated_early and not result.connected and result.height is None
    assert SearchConfig().node_limit == 50_000_000


def test_determinism_and_parallel_agree(small_pairs):
    a, b = small_pairs[-1]
    for strategy in Strategy:
        runs = [connect([a, b], SearchConfig(strategy, 6)) for _ in range(2)]
        runs.append(connect([a, b], SearchConfig(strategy, 6, deterministic=False, workers=2)))
        keys = {(r.connected, r.height, r.nodes_23_32, r.nodes_20, tuple(r.level_nodes)) for r in runs}
        assert len(keys) == 1


def test_blind_levels_are_nested():
    pair = None
    for a, b in scrambled_pairs(fixtures.double_tetrahedron(), 10, rng_seed=9, max_size=5):
        if not connect([a, b], SearchConfig(Strategy.BLIND, 0)).connected:
            pair = (a, b)
            break
    assert pair is not None
    low = connect(pair, SearchConfig(Strategy.BLIND, 0, record_visited=True))
    high = connect(pair, SearchConfig(Strategy.BLIND, 1, record_visited=True))
    assert low.visited < high.visited
    assert len(low.visited) == low.nodes_23_32


def test_compare_strategies_gap(small_pairs):
    a, b = small_pairs[0]
    comparison = compare_strategies([a, b], 6)
    assert [r.strategy for r in comparison.results()] == list(Strategy)
    assert comparison.height_gap == comparison.monotonic.height - comparison.blind.height >= 0
    same = compare_strategies([a, a], 3)
    assert same.height_gap == 0 and all(r.height == 0 for r in same.results())
    assert same.findings() == []


def test_scramble(rp3):
    assert scramble(rp3, 0, 2, 1).signature() == rp3.signature()
    once = scramble(rp3, 7, 6, 42)
    assert once.signature() == scramble(rp3, 7, 6, 42).signature()
    assert once.size <= 6
    assert z2_homology_ranks(once) == z2_homology_ranks(rp3)
    assert validate(once).material_vertex_count == 1
    with pytest.raises(NoEligibleMove):
        # No 3-2 move exists at two tetrahedra and 2-3 is capped away.
        scramble(fixtures.double_tetrahedron(), 1, 2, 0)
