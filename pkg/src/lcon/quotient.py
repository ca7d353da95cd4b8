"""Ordering the classes of a local congruence.

A δ-sequence alternates steps inside a class with steps up the lattice
order.  Contracting every class to a node turns a δ-sequence into a walk in
the *class digraph* (edge X -> Y when some x in X lies below some y in Y) and
every walk expands back into a δ-sequence, so the class preorder is plain
reachability.  It is a partial order exactly when each strongly connected
component is a single class.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .lattice import FiniteLattice, _bits, from_order
from .partitions import Partition, is_local_congruence


class NotLocalCongruence(ValueError):
    pass


class CyclesNotClosed(ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"non-closed δ-cycle {witness}")


@dataclass
class ClassDigraph:
    partition: Partition
    edges: frozenset[tuple[int, int]]   # block ids, loops omitted
    reach: tuple[int, ...]              # reach[X]: bitmask of blocks reachable from X

    def preceq(self, x: int, y: int) -> bool:
        """[x] ⪯ [y] for block ids x, y."""
        return bool(self.reach[x] >> y & 1)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.partition)))
        g.add_edges_from(self.edges)
        return g


def _require_local(p: Partition) -> None:
    if not is_local_congruence(p):
        raise NotLocalCongruence(repr(p))


def class_preorder(p: Partition, check: bool = True) -> ClassDigraph:
    if check:
        _require_local(p)
    lat = p.lattice
    k = len(p)
    above = [0] * k  # union of up-sets per block
    for bid, blk in enumerate(p.blocks):
        for x in blk:
            above[bid] |= lat.up[x]
    edges = set()
    for bid in range(k):
        for y in _bits(above[bid]):
            t = p.block_of[y]
            if t != bid:
                edges.add((bid, t))
    succ = [[] for _ in range(k)]
    for s, t in edges:
        succ[s].append(t)
    reach = []
    for s in range(k):
        seen = 1 << s
        stack = [s]
        while stack:
            u = stack.pop()
            for v in succ[u]:
                if not seen >> v & 1:
                    seen |= 1 << v
                    stack.append(v)
        reach.append(seen)
    return ClassDigraph(p, frozenset(edges), tuple(reach))


def _element_steps(p: Partition, u: int) -> list[int]:
    """Successors of u in a δ-sequence: class mates, then covers."""
    lat = p.lattice
    nxt = [v for v in p.block(u) if v != u]
    nxt += [b for a, b in lat.hasse if a == u]
    return nxt


def find_delta_sequence(p: Partition, x: int, y: int) -> Optional[tuple[int, ...]]:
    """A shortest δ-sequence from element x to element y, or None."""
    _require_local(p)
    if x == y:
        return (x,)
    prev = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in _element_steps(p, u):
            if v in prev:
                continue
            prev[v] = u
            if v == y:
                path = [v]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            queue.append(v)
    return None


def _edge_witness(p: Partition, s: int, t: int) -> tuple[int, int]:
    """Elements (x, y), x in block s, y in block t, x <= y; covers preferred."""
    lat = p.lattice
    best = None
    for x in p.blocks[s]:
        for y in p.blocks[t]:
            if lat.leq(x, y):
                cand = (0 if lat.covers(x, y) else 1, x, y)
                if best is None or cand < best:
                    best = cand
    return best[1], best[2]


def _expand(p: Partition, class_cycle: list[int]) -> tuple[int, ...]:
    """Element-level δ-cycle for a cycle of block ids (first == last)."""
    hops = [_edge_witness(p, s, t) for s, t in zip(class_cycle, class_cycle[1:])]
    seq = []
    for x, y in hops:
        if not seq or seq[-1] != x:
            seq.append(x)
        seq.append(y)
    if seq[-1] != seq[0]:
        seq.append(seq[0])
    return tuple(seq)


def open_cycle(p: Partition, start: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """A non-closed δ-cycle (through element ``start`` when given), or None.

    The cycle is a shortest cycle of the class digraph, expanded to elements
    with covering order steps where possible.
    """
    _require_local(p)
    dg = class_preorder(p, check=False)
    if start is not None:
        starts = [p.block_of[start]]
    else:
        starts = list(range(len(p)))
    succ = {u: [] for u in range(len(p))}
    for u, t in sorted(dg.edges):
        succ[u].append(t)
    for s in starts:
        # shortest cycle through s: BFS from s back to s
        prev = {s: None}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for v in succ[u]:
                if v == s:
                    found = u
                    break
                if v not in prev:
                    prev[v] = u
                    queue.append(v)
        if found is None:
            continue
        path = [found]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        cyc = list(reversed(path)) + [s]
        seq = _expand(p, cyc)
        if start is not None and seq[0] != start:
            # rotate so the cycle starts and ends at the requested element
            body = list(seq[:-1])
            if start in body:
                i = body.index(start)
                seq = tuple(body[i:] + body[:i] + [start])
            else:
                # start shares a class with seq[0]: enter and leave by class steps
                seq = (start,) + seq + (start,)
        return seq
    return None


def all_cycles_closed(p: Partition) -> bool:
    """True iff every strongly connected class component is a single class."""
    _require_local(p)
    dg = class_preorder(p, check=False)
    return all(len(c) == 1 for c in nx.strongly_connected_components(dg.graph()))


def rho_delta(p: Partition) -> Partition:
    """Merge classes that are mutually ⪯-related (SCCs of the class digraph)."""
    _require_local(p)
    dg = class_preorder(p, check=False)
    comp = {}
    for i, c in enumerate(nx.strongly_connected_components(dg.graph())):
        for b in c:
            comp[b] = i
    return Partition(p.lattice, [comp[p.block_of[x]] for x in range(p.lattice.n)])


# -- quotient posets --------------------------------------------------------

@dataclass
class QuotientPoset:
    partition: Partition
    classes: tuple[tuple[int, ...], ...]
    poset: FiniteLattice    # built unchecked: meet/join may be None

    @property
    def hasse(self) -> tuple[tuple[int, int], ...]:
        return self.poset.hasse

    def leq(self, x: int, y: int) -> bool:
        return self.poset.leq(x, y)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels


def class_label(lat: FiniteLattice, blk) -> str:
    return "{" + ",".join(lat.labels[x] for x in sorted(blk)) + "}"


def quotient_poset(p: Partition) -> QuotientPoset:
    _require_local(p)
    dg = class_preorder(p, check=False)
    if not all(len(c) == 1 for c in nx.strongly_connected_components(dg.graph())):
        raise CyclesNotClosed(open_cycle(p))
    labels = [class_label(p.lattice, b) for b in p.blocks]
    poset = from_order(labels, sorted(dg.edges), check=False)
    return QuotientPoset(p, p.blocks, poset)


def missing_bound(q: QuotientPoset) -> Optional[tuple[str, int, int]]:
    """First pair of classes lacking a supremum or infimum, as (kind, x, y)."""
    k = len(q)
    for x in range(k):
        for y in range(x + 1, k):
            if q.poset.join[x][y] is None:
                return ("join", x, y)
            if q.poset.meet[x][y] is None:
                return ("meet", x, y)
    return None


def is_quotient_lattice(q: QuotientPoset) -> bool:
    return missing_bound(q) is None
