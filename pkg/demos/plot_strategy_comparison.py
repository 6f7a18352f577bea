"""
Comparing search strategies
===========================

Scramble a triangulation twice, then ask how many extra tetrahedra each
strategy needs to join the two results.  Blind search may use any 2-3 or
3-2 move; monotonic search goes up and then down; semi-monotonic search
may also collapse pillows with 2-0 moves on the way down.
"""

from pachner import classify_sequence, compare_strategies, fixtures, scramble

rp3 = fixtures.projective_space()
a = scramble(rp3, 6, 5, rng_seed=11)
# try further seeds until the second walk ends at a different triangulation of the same size
b = next(t for t in (scramble(rp3, 6, 5, rng_seed=s) for s in range(12, 200))
         if t.size == a.size and t.signature() != a.signature())
print("seeds:", a.signature(), b.signature(), f"({a.size} tetrahedra)")

comparison = compare_strategies([a, b], max_extra_tets=6, emit_paths=True)
for result in comparison.results():
    (path,) = result.paths.values()
    print(f"{result.strategy.value:>15}: height {result.height}, "
          f"{result.nodes_23_32} nodes from 2-3/3-2, {result.nodes_20} from 2-0, "
          f"path of {len(path)} moves ({classify_sequence(path).value})")

# The monotonic search space is part of the blind one, so the gap is never negative
print("height gap:", comparison.height_gap)
for line in comparison.findings():
    print("finding:", line)
