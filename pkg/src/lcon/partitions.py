"""Equivalence relations on lattice elements and their classification.

A `Partition` is stored as a canonical block-label vector: block ids are
assigned in order of each block's smallest element, so two partitions of the
same lattice are equal exactly when their vectors are equal.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .lattice import FiniteLattice, Quadrilateral, _bits, compact_json, quadrilaterals


class MixedLattices(ValueError):
    pass


def canonical(labels: Sequence) -> tuple[int, ...]:
    """Renumber arbitrary block keys as a restricted growth string."""
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


class Partition:
    __slots__ = ("lattice", "block_of", "_blocks", "_masks")

    def __init__(self, lattice: FiniteLattice, block_of: Sequence):
        if len(block_of) != lattice.n:
            raise ValueError("partition size does not match lattice")
        self.lattice = lattice
        self.block_of = canonical(block_of)
        self._blocks = None
        self._masks = None

    @classmethod
    def from_blocks(cls, lattice: FiniteLattice, blocks: Iterable[Iterable]) -> "Partition":
        """Blocks may hold indices or labels; unlisted elements become singletons."""
        key = list(range(lattice.n))
        seen = set()
        for i, block in enumerate(blocks):
            members = [lattice.index(x) if isinstance(x, str) else int(x) for x in block]
            if not members:
                raise ValueError("empty block")
            for m in members:
                if m in seen:
                    raise ValueError(f"element {lattice.labels[m]} in two blocks")
                seen.add(m)
                key[m] = lattice.n + i
        return cls(lattice, key)

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "Partition":
        return cls(lattice, range(lattice.n))

    @classmethod
    def full(cls, lattice: FiniteLattice) -> "Partition":
        return cls(lattice, [0] * lattice.n)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(max(self.block_of) + 1)]
            for x, b in enumerate(self.block_of):
                out[b].append(x)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    @property
    def masks(self) -> tuple[int, ...]:
        if self._masks is None:
            self._masks = tuple(sum(1 << x for x in b) for b in self.blocks)
        return self._masks

    def __len__(self) -> int:
        return len(self.blocks)

    def block(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def pairs(self) -> list[tuple[int, int]]:
        """Related pairs (a, b) with a < b."""
        return [(a, b) for blk in self.blocks for i, a in enumerate(blk) for b in blk[i + 1:]]

    def labelled_blocks(self) -> list[list[str]]:
        L = self.lattice.labels
        return [[L[x] for x in blk] for blk in self.blocks]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.block_of == other.block_of and (
            self.lattice is other.lattice or self.lattice == other.lattice
        )

    def __hash__(self) -> int:
        return hash(self.block_of)

    def __repr__(self) -> str:
        inner = " ".join("{" + ",".join(b) + "}" for b in self.labelled_blocks())
        return f"Partition({inner})"


# -- inclusion order on equivalence relations ------------------------------

def refines(p: Partition, q: Partition) -> bool:
    """p ⊑ q: every block of p lies inside a block of q."""
    _same_lattice(p, q)
    return len(set(zip(p.block_of, q.block_of))) == len(p)


def meet(p: Partition, q: Partition) -> Partition:
    """Common refinement (intersection of the two relations)."""
    _same_lattice(p, q)
    return Partition(p.lattice, list(zip(p.block_of, q.block_of)))


def transitive_join(ps: Sequence[Partition]) -> Partition:
    """Finest partition containing every input (equivalence generated by the union)."""
    if not ps:
        raise ValueError("need at least one partition")
    lat = ps[0].lattice
    for p in ps[1:]:
        _same_lattice(ps[0], p)
    parent = list(range(lat.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in ps:
        for blk in p.blocks:
            r = find(blk[0])
            for x in blk[1:]:
                parent[find(x)] = r
    return Partition(lat, [find(x) for x in range(lat.n)])


def _same_lattice(p: Partition, q: Partition) -> None:
    if p.lattice is not q.lattice and p.lattice != q.lattice:
        raise MixedLattices("partitions live on different lattices")


# -- class predicates -------------------------------------------------------

def sublattice_violation(p: Partition, block: int) -> Optional[tuple[str, int, int, int]]:
    """First (kind, a, b, escaped) with a^b or avb outside the block, else None."""
    lat = p.lattice
    blk = p.blocks[block]
    mask = p.masks[block]
    for i, a in enumerate(blk):
        for b in blk[i + 1:]:
            m = lat.meet[a][b]
            if not mask >> m & 1:
                return ("meet", a, b, m)
            j = lat.join[a][b]
            if not mask >> j & 1:
                return ("join", a, b, j)
    return None


def convexity_violation(p: Partition, block: int) -> Optional[tuple[int, int, int]]:
    """First (a, b, c) with a <= c <= b, a and b in the block, c outside."""
    lat = p.lattice
    blk = p.blocks[block]
    mask = p.masks[block]
    for a in blk:
        for b in blk:
            if a != b and lat.leq(a, b):
                missing = lat.up[a] & lat.down[b] & ~mask
                if missing:
                    return (a, b, _bits(missing)[0])
    return None


def is_class_sublattice(p: Partition, block: int) -> bool:
    return sublattice_violation(p, block) is None


def is_class_convex(p: Partition, block: int) -> bool:
    return convexity_violation(p, block) is None


def local_congruence_violation(p: Partition):
    """First failing class condition as ``(rule, witness)``, or None."""
    for k in range(len(p)):
        v = sublattice_violation(p, k)
        if v is not None:
            return ("sublattice-" + v[0], v[1:])
        c = convexity_violation(p, k)
        if c is not None:
            return ("convexity", c)
    return None


def is_local_congruence(p: Partition) -> bool:
    return all(is_class_sublattice(p, k) and is_class_convex(p, k) for k in range(len(p)))


def quadrilateral_violations(p: Partition) -> list[Quadrilateral]:
    """Quadrilaterals <a,b; c,d> where one side shares a class and the other does not."""
    bad = []
    for q in _quadrilaterals(p.lattice):
        ab = p.same(q.a, q.b)
        cd = p.same(q.c, q.d)
        if ab != cd:
            bad.append(q)
    return bad


def quadrilateral_violation(p: Partition) -> Optional[Quadrilateral]:
    """Witness of a failure of quadrilateral closure, or None.

    Each quadrilateral appears in both orientations, so checking
    "same class on one side but not the other" against the ordered list
    covers the closure condition for every pair of opposite sides.
    """
    for q in _quadrilaterals(p.lattice):
        if p.same(q.a, q.b) != p.same(q.c, q.d):
            return q
    return None


def is_quadrilateral_closed(p: Partition) -> bool:
    return quadrilateral_violation(p) is None


def is_congruence(p: Partition) -> bool:
    return is_local_congruence(p) and is_quadrilateral_closed(p)


def compatibility_violation(p: Partition) -> Optional[tuple[int, int, int, int]]:
    """Direct test of meet/join compatibility on related pairs.

    Returns (a, b, c, d) with (a,b), (c,d) related but (avc, bvd) or
    (a^c, b^d) unrelated, or None.
    """
    lat = p.lattice
    J, M = lat.join, lat.meet
    rel = [(a, b) for blk in p.blocks for a in blk for b in blk]
    for a, b in rel:
        for c, d in rel:
            if not p.same(J[a][c], J[b][d]) or not p.same(M[a][c], M[b][d]):
                return (a, b, c, d)
    return None


def compatibility_check(p: Partition) -> bool:
    return compatibility_violation(p) is None


def local_compatibility_violation(p: Partition) -> Optional[tuple[int, int, int]]:
    """(a, b, c) with (a,b) related, a^b <= c <= avb, but avc/bvc or a^c/b^c unrelated."""
    lat = p.lattice
    J, M = lat.join, lat.meet
    for blk in p.blocks:
        for a in blk:
            for b in blk:
                for c in _bits(lat.up[M[a][b]] & lat.down[J[a][b]]):
                    if not p.same(J[a][c], J[b][c]) or not p.same(M[a][c], M[b][c]):
                        return (a, b, c)
    return None


def local_compatibility_check(p: Partition) -> bool:
    return local_compatibility_violation(p) is None


def _all_covers(lat: FiniteLattice, q: Quadrilateral) -> bool:
    return lat.covers(q.a, q.b) and lat.covers(q.c, q.d)


def _quadrilaterals(lat: FiniteLattice) -> list[Quadrilateral]:
    cached = lat.__dict__.get("_quads_cache")
    if cached is None:
        # report the tightest witnesses first: covering sides, then lowest top
        def rank(q):
            top = lat.join[q.b][q.d]
            return (not _all_covers(lat, q), bin(lat.down[top]).count("1"))
        cached = sorted(quadrilaterals(lat), key=rank)
        object.__setattr__(lat, "_quads_cache", cached)
    return cached


# -- JSON partition format --------------------------------------------------

def partition_to_dict(p: Partition) -> dict:
    return {"blocks": p.labelled_blocks()}


def partition_from_dict(lattice: FiniteLattice, data: dict) -> Partition:
    return Partition.from_blocks(lattice, data["blocks"])


def load_partition(lattice: FiniteLattice, path) -> Partition:
    return partition_from_dict(lattice, json.loads(Path(path).read_text()))


def dump_partition(p: Partition, path) -> None:
    Path(path).write_text(compact_json(partition_to_dict(p)))
