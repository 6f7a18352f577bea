"""Connecting triangulations by blind, monotonic and semi-monotonic search.

All three searches grow one component per seed, deduplicate triangulations
by signature and merge components in a union-find structure whenever two of
them reach a common triangulation.  They proceed by levels of *height* (the
number of tetrahedra allowed above the seeds' common size ``n``) and only
check for a full merge once a level is complete, so node counts do not
depend on the order of expansion within a level.

* Blind: level ``h`` exhausts everything reachable by 2-3 and 3-2 moves
  without exceeding ``n + h`` tetrahedra.
* Monotonic: level ``h`` applies every 2-3 move to the triangulations found
  at height ``h - 1``.
* Semi-monotonic: as monotonic, and every new 2-3 node is followed by its
  closure under 2-0 moves.  Closure nodes are recorded but never expanded
  by 2-3 moves, and they only merge with 2-3 nodes of another component, so
  each merge witnesses a path of shape (2-3)* (2-0)* (3-2)*.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Sequence

from .errors import IneligibleSeed, NoEligibleMove, SeedMismatch
from .kernel import Triangulation, validate
from .moves import MoveKind, MoveSequence, successors
from .signature import decode
from .unionfind import UnionFind

log = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 50_000_000

_UP = (MoveKind.M23,)
_BLIND = (MoveKind.M23, MoveKind.M32)
_DOWN20 = (MoveKind.M20,)


class Strategy(Enum):
    BLIND = "blind"
    MONOTONIC = "monotonic"
    SEMI_MONOTONIC = "semi-monotonic"

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchConfig:
    strategy: Strategy = Strategy.BLIND
    max_extra_tets: int = 3
    node_limit: int = DEFAULT_NODE_LIMIT
    deterministic: bool = True
    emit_paths: bool = False
    workers: int = 1
    record_visited: bool = False

    def __post_init__(self):
        self.strategy = Strategy(self.strategy)
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.max_extra_tets < 0:
            raise ValueError("max_extra_tets must be non-negative")


@dataclass
class SearchResult:
    strategy: Strategy
    base_size: int
    connected: bool
    height: int | None
    nodes_23_32: int
    nodes_20: int
    terminated_early: bool
    paths: dict[tuple[int, int], MoveSequence] = field(default_factory=dict)
    level_nodes: list[int] = field(default_factory=list)
    wall_ms: float = 0.0
    visited: frozenset[str] | None = None

    @property
    def nodes(self) -> int:
        return self.nodes_23_32 + self.nodes_20


# ---------------------------------------------------------------------------
# Expansion work units (top level so worker processes can run them)


def _expand(item):
    sig, kinds, cap = item
    seen = set()
    out = []
    for site, res in successors(decode(sig), kinds, cap):
        child = res.signature()
        if child not in seen:
            seen.add(child)
            out.append((site.kind, child))
    return out


def _closure(sig):
    """Breadth-first closure of ``sig`` under 2-0 moves, as (parent, child) pairs."""
    seen = {sig}
    queue = [(sig, decode(sig))]
    out = []
    i = 0
    while i < len(queue):
        parent, tri = queue[i]
        i += 1
        for _, res in successors(tri, _DOWN20):
            child = res.signature()
            if child not in seen:
                seen.add(child)
                queue.append((child, res))
                out.append((parent, child))
    return out


class _NodeLimit(Exception):
    pass


class _Search:
    def __init__(self, seeds: Sequence[Triangulation], cfg: SearchConfig):
        self.cfg = cfg
        self.n = _check_seeds(seeds)
        self.seed_sigs = [s.signature() for s in seeds]
        self.uf = UnionFind(len(seeds))
        # tree: sig -> (owner seed, size, parent sig, move kind)
        self.tree: dict[str, tuple[int, int, str | None, MoveKind | None]] = {}
        # closure: sig -> {owner seed: (parent sig, parent is a tree node)}
        self.closure: dict[str, dict[int, tuple[str, bool]]] = {}
        self.closure_only = 0
        # Each merge: (a_seed, a_node, a_node_is_closure, step kind, meet, b_seed)
        self.events: list[tuple] = []
        self.by_size: dict[int, list[str]] = {}
        self.level_nodes: list[int] = []
        self.pool = None

    # -- bookkeeping ------------------------------------------------------

    @property
    def visited(self) -> int:
        return len(self.tree) + self.closure_only

    def _check_limit(self):
        if self.visited >= self.cfg.node_limit:
            raise _NodeLimit

    def _merge(self, a_seed, a_node, a_closure, kind, meet, b_seed):
        if self.uf.union(a_seed, b_seed):
            self.events.append((a_seed, a_node, a_closure, kind, meet, b_seed))

    def _add_tree(self, sig, owner, size, parent, kind, limit=True) -> bool:
        rec = self.tree.get(sig)
        if rec is not None:
            if not self.uf.connected(rec[0], owner):
                self._merge(owner, parent, False, kind, sig, rec[0])
            return False
        self.tree[sig] = (owner, size, parent, kind)
        self.by_size.setdefault(size, []).append(sig)
        for other in self.closure.get(sig, ()):
            if not self.uf.connected(other, owner):
                self._merge(other, sig, True, None, sig, owner)
        if limit:
            self._check_limit()
        return True

    def _add_closure(self, sig, owner, parent, parent_is_tree):
        entry = self.closure.get(sig)
        if entry is None:
            entry = self.closure[sig] = {}
            if sig not in self.tree:
                self.closure_only += 1
        if owner in entry:
            return
        entry[owner] = (parent, parent_is_tree)
        rec = self.tree.get(sig)
        if rec is not None and not self.uf.connected(rec[0], owner):
            self._merge(owner, sig, True, None, sig, rec[0])
        if rec is None:
            self._check_limit()

    def _run_batch(self, fn, items):
        if self.pool is None or len(items) < 2:
            return map(fn, items)
        chunk = max(1, len(items) // (4 * self.cfg.workers))
        return self.pool.map(fn, items, chunksize=chunk)

    # -- strategies -------------------------------------------------------

    def run(self) -> SearchResult:
        start = time.perf_counter()
        cfg = self.cfg
        if not cfg.deterministic and cfg.workers > 1:
            self.pool = ProcessPoolExecutor(cfg.workers)
        height = None
        early = False
        try:
            for i, sig in enumerate(self.seed_sigs):
                self._add_tree(sig, i, self.n, None, None, limit=False)
            if self.uf.components == 1:
                height = 0
            else:
                self._check_limit()
                grow = self._blind_level if cfg.strategy is Strategy.BLIND else self._up_level
                for h in range(0 if cfg.strategy is Strategy.BLIND else 1, cfg.max_extra_tets + 1):
                    grow(h)
                    self.level_nodes.append(self.visited)
                    log.debug("%s level %d: %d nodes", cfg.strategy, h, self.visited)
                    if self.uf.components == 1:
                        height = h
                        break
        except _NodeLimit:
            early = True
            if self.uf.components == 1:
                height = len(self.level_nodes) + (0 if cfg.strategy is Strategy.BLIND else 1)
        finally:
            if self.pool is not None:
                self.pool.shutdown()
        connected = self.uf.components == 1
        result = SearchResult(
            strategy=cfg.strategy,
            base_size=self.n,
            connected=connected,
            height=height if connected else None,
            nodes_23_32=len(self.tree),
            nodes_20=self.closure_only,
            terminated_early=early,
            level_nodes=list(self.level_nodes),
        )
        if cfg.emit_paths and connected:
            result.paths = self.paths()
        if cfg.record_visited:
            result.visited = frozenset(self.tree).union(self.closure)
        result.wall_ms = (time.perf_counter() - start) * 1e3
        return result

    def _blind_level(self, h):
        cap = self.n + h
        if h == 0:
            wave = [(sig, _BLIND) for sig in self.seed_sigs if self.tree[sig][2] is None]
            wave = list(dict.fromkeys(wave))
        else:
            # Only nodes at the previous cap had 2-3 moves cut off.
            wave = [(sig, _UP) for sig in self.by_size.get(cap - 1, [])]
        while wave:
            items = [(sig, kinds, cap) for sig, kinds in wave]
            new = []
            for (sig, _), children in zip(wave, self._run_batch(_expand, items)):
                owner = self.tree[sig][0]
                for kind, child in children:
                    size = self.tree[sig][1] + kind.delta
                    if self._add_tree(child, owner, size, sig, kind):
                        new.append((child, _BLIND))
            wave = new

    def _up_level(self, h):
        size = self.n + h
        layer = self.by_size.get(size - 1, [])
        semi = self.cfg.strategy is Strategy.SEMI_MONOTONIC
        items = [(sig, _UP, size) for sig in layer]
        for sig, children in zip(list(layer), self._run_batch(_expand, items)):
            owner = self.tree[sig][0]
            for kind, child in children:
                if self._add_tree(child, owner, size, sig, kind) and semi:
                    for parent, node in _closure(child):
                        self._add_closure(node, owner, parent, parent == child)

    # -- path reconstruction ---------------------------------------------

    def _tree_chain(self, sig):
        """(parent, kind, child) steps from the owning seed down to ``sig``."""
        steps = []
        while True:
            _, _, parent, kind = self.tree[sig]
            if parent is None:
                break
            steps.append((parent, kind, sig))
            sig = parent
        return steps[::-1]

    def _closure_chain(self, sig, owner):
        steps = []
        while True:
            parent, parent_is_tree = self.closure[sig][owner]
            steps.append((parent, MoveKind.M20, sig))
            sig = parent
            if parent_is_tree:
                break
        return self._tree_chain(sig) + steps[::-1]

    def paths(self) -> dict[tuple[int, int], MoveSequence]:
        out = {}
        for a_seed, a_node, a_closure, kind, meet, b_seed in self.events:
            if a_node is None:
                steps = []  # duplicate seed
            elif a_closure:
                steps = self._closure_chain(a_node, a_seed)
            else:
                steps = self._tree_chain(a_node)
            if kind is not None:
                steps.append((a_node, kind, meet))
            sites = [_find_site(p, k, c) for p, k, c in steps]
            for parent, k, child in reversed(self._tree_chain(meet)):
                sites.append(_find_site(child, k.inverse, parent))
            out[(a_seed, b_seed)] = MoveSequence(self.seed_sigs[a_seed], self.seed_sigs[b_seed], sites)
        return out


def _find_site(parent: str, kind: MoveKind, child: str):
    for site, res in successors(decode(parent), (kind,)):
        if res.signature() == child:
            return site
    raise RuntimeError(f"no {kind} move from {parent} reaches {child}")


def _check_seeds(seeds: Sequence[Triangulation]) -> int:
    if not seeds:
        raise SeedMismatch("need at least one seed")
    sizes = set()
    material = set()
    for tri in seeds:
        report = validate(tri)
        if not report.is_pseudo_manifold:
            raise IneligibleSeed("seeds must be closed pseudo-manifold triangulations")
        sizes.add(tri.size)
        material.add(report.material_vertex_count)
    if len(sizes) > 1:
        raise SeedMismatch(f"seeds have different sizes {sorted(sizes)}")
    if len(material) > 1:
        raise SeedMismatch(f"seeds have different material vertex counts {sorted(material)}")
    return sizes.pop()


def connect(seeds: Sequence[Triangulation], cfg: SearchConfig | None = None, **kwargs) -> SearchResult:
    """Search for move sequences joining all ``seeds``.

    Keyword arguments override fields of ``cfg``.  With ``emit_paths`` the
    result holds one replayable sequence per merge, which together span all
    seeds.
    """
    cfg = cfg or SearchConfig()
    if kwargs:
        cfg = SearchConfig(**{**cfg.__dict__, **kwargs})
    return _Search(seeds, cfg).run()


def scramble(tri: Triangulation, walk_length: int, max_size: int, rng_seed: int) -> Triangulation:
    """Random walk of 2-3 and 3-2 moves, never exceeding ``max_size`` tetrahedra."""
    rng = Random(rng_seed)
    cur = tri
    for step in range(walk_length):
        options = successors(cur, _BLIND, max_size)
        if not options:
            raise NoEligibleMove(f"no 2-3 or 3-2 move available at step {step + 1}")
        cur = rng.choice(options)[1]
    return cur


@dataclass
class StrategyComparison:
    blind: SearchResult
    monotonic: SearchResult
    semi_monotonic: SearchResult

    @property
    def height_gap(self) -> int | None:
        if self.blind.connected and self.monotonic.connected:
            return self.monotonic.height - self.blind.height
        return None

    def results(self) -> list[SearchResult]:
        return [self.blind, self.monotonic, self.semi_monotonic]

    def findings(self) -> list[str]:
        """Departures from the expected monotonic / semi-monotonic agreement."""
        m, s = self.monotonic, self.semi_monotonic
        notes = []
        if m.connected and s.connected:
            if m.height != s.height:
                notes.append(f"heights differ: monotonic {m.height}, semi-monotonic {s.height}")
            if m.nodes_23_32 != s.nodes_23_32:
                notes.append(
                    f"2-3 node counts differ: monotonic {m.nodes_23_32}, semi-monotonic {s.nodes_23_32}"
                )
        return notes


def compare_strategies(seeds, max_extra_tets: int, node_limit: int = DEFAULT_NODE_LIMIT,
                       **kwargs) -> StrategyComparison:
    runs = {
        strategy: connect(seeds, SearchConfig(strategy, max_extra_tets, node_limit, **kwargs))
        for strategy in Strategy
    }
    comparison = StrategyComparison(runs[Strategy.BLIND], runs[Strategy.MONOTONIC],
                                    runs[Strategy.SEMI_MONOTONIC])
    for note in comparison.findings():
        log.warning("notable finding: %s", note)
    return comparison
