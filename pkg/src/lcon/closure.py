"""Least (local) congruences containing a partition, principal (local)
congruences, and exhaustive enumeration of LCon L for small lattices.

Both closures are fixpoints of *forced* merges: every merge performed is one
that any (local) congruence containing the current partition must also make,
so the fixpoint is the least one and does not depend on scan order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .lattice import FiniteLattice, _bits
from .partitions import Partition, is_congruence, is_local_congruence, meet, refines, transitive_join


class LatticeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Merge:
    rule: str                   # sublattice-meet | sublattice-join | convexity | compatibility-join | ...
    witness: tuple[int, ...]    # elements that force the merge
    pair: tuple[int, int]       # one element from each of the two merged blocks


@dataclass
class ClosureTrace:
    steps: list[Merge] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, start: Partition) -> Partition:
        """Apply the recorded merges to ``start``."""
        uf = _UnionFind(start.block_of)
        for s in self.steps:
            uf.union(*s.pair)
        return uf.partition(start.lattice)

    def to_jsonl(self, lattice: Optional[FiniteLattice] = None) -> str:
        lines = []
        for s in self.steps:
            rec = {"rule": s.rule, "witness": list(s.witness), "pair": list(s.pair)}
            if lattice is not None:
                rec["witness_labels"] = [lattice.labels[x] for x in s.witness]
                rec["pair_labels"] = [lattice.labels[x] for x in s.pair]
            lines.append(json.dumps(rec))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_jsonl(cls, text: str) -> "ClosureTrace":
        steps = []
        for line in text.splitlines():
            if line.strip():
                rec = json.loads(line)
                steps.append(Merge(rec["rule"], tuple(rec["witness"]), tuple(rec["pair"])))
        return cls(steps)


class _UnionFind:
    """Union-find over element indices, seeded from a block-label vector."""

    def __init__(self, block_of: Sequence[int]):
        first: dict[int, int] = {}
        self.parent = [first.setdefault(b, x) for x, b in enumerate(block_of)]

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def partition(self, lattice: FiniteLattice) -> Partition:
        return Partition(lattice, [self.find(x) for x in range(len(self.parent))])


def _local_scan(p: Partition) -> Optional[Merge]:
    """First forced merge for the local-congruence conditions, in scan order."""
    lat = p.lattice
    for k, blk in enumerate(p.blocks):
        mask = p.masks[k]
        for i, a in enumerate(blk):
            for b in blk[i + 1:]:
                m = lat.meet[a][b]
                if not mask >> m & 1:
                    return Merge("sublattice-meet", (a, b, m), (a, m))
                j = lat.join[a][b]
                if not mask >> j & 1:
                    return Merge("sublattice-join", (a, b, j), (a, j))
        if len(blk) > 1:
            # a sublattice block has a least and a greatest element
            lo, hi = lat.meet_all(blk), lat.join_all(blk)
            missing = lat.up[lo] & lat.down[hi] & ~mask
            if missing:
                c = _bits(missing)[0]
                return Merge("convexity", (lo, hi, c), (lo, c))
    return None


def least_local_congruence(p: Partition) -> tuple[Partition, ClosureTrace]:
    """Least local congruence containing ``p`` and the merges that produced it."""
    trace = ClosureTrace()
    current = p
    while True:
        step = _local_scan(current)
        if step is None:
            return current, trace
        trace.steps.append(step)
        uf = _UnionFind(current.block_of)
        uf.union(*step.pair)
        current = uf.partition(p.lattice)


def least_congruence(p: Partition) -> tuple[Partition, ClosureTrace]:
    """Least congruence containing ``p``.

    For each block, the pairs (r, x) with r the block's smallest element span
    the relation; translating them by every c (x -> xvc, x -> x^c) and merging
    until nothing changes yields the generated congruence.
    """
    lat = p.lattice
    J, M = lat.join, lat.meet
    uf = _UnionFind(p.block_of)
    trace = ClosureTrace()
    changed = True
    while changed:
        changed = False
        groups: dict[int, list[int]] = {}
        for x in range(lat.n):
            groups.setdefault(uf.find(x), []).append(x)
        for blk in groups.values():
            r = blk[0]
            for x in blk[1:]:
                for c in range(lat.n):
                    u, v = J[r][c], J[x][c]
                    if uf.union(u, v):
                        trace.steps.append(Merge("compatibility-join", (r, x, c), (u, v)))
                        changed = True
                    u, v = M[r][c], M[x][c]
                    if uf.union(u, v):
                        trace.steps.append(Merge("compatibility-meet", (r, x, c), (u, v)))
                        changed = True
    return uf.partition(lat), trace


def _pair_partition(lat: FiniteLattice, a: int, b: int) -> Partition:
    key = list(range(lat.n))
    key[b] = key[a]
    return Partition(lat, key)


def principal_local_congruence(lat: FiniteLattice, a: int, b: int) -> Partition:
    return least_local_congruence(_pair_partition(lat, a, b))[0]


def principal_congruence(lat: FiniteLattice, a: int, b: int) -> Partition:
    return least_congruence(_pair_partition(lat, a, b))[0]


def join_of_partitions(ps: Sequence[Partition], mode: str = "local") -> Partition:
    """Join in LCon L (``mode="local"``) or Con L (``mode="congruence"``)."""
    glued = transitive_join(ps)
    if mode == "local":
        return least_local_congruence(glued)[0]
    if mode == "congruence":
        return least_congruence(glued)[0]
    raise ValueError(f"unknown mode {mode!r}")


# -- exhaustive oracles -----------------------------------------------------

def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of range(n) as restricted growth strings."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def all_partitions(lat: FiniteLattice) -> Iterator[Partition]:
    for rgs in set_partitions(lat.n):
        yield Partition(lat, rgs)


def enumerate_local_congruences(lat: FiniteLattice, max_n: int = 8) -> list[Partition]:
    """All local congruences of ``lat``, finer ones first (a linear extension of ⊑)."""
    if lat.n > max_n:
        raise LatticeTooLarge(f"{lat.n} elements exceeds cap {max_n}")
    found = [p for p in all_partitions(lat) if is_local_congruence(p)]
    found.sort(key=lambda p: (-len(p), p.block_of))
    return found


def enumerate_congruences(lat: FiniteLattice, max_n: int = 8) -> list[Partition]:
    if lat.n > max_n:
        raise LatticeTooLarge(f"{lat.n} elements exceeds cap {max_n}")
    found = [p for p in all_partitions(lat) if is_congruence(p)]
    found.sort(key=lambda p: (-len(p), p.block_of))
    return found


def meet_over(candidates: Sequence[Partition], lower: Partition) -> Partition:
    """Common refinement of every candidate that contains ``lower``."""
    above = [q for q in candidates if refines(lower, q)]
    if not above:
        raise ValueError("no candidate contains the partition")
    acc = above[0]
    for q in above[1:]:
        acc = meet(acc, q)
    return acc
