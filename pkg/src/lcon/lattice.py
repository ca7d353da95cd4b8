"""Finite lattices stored as bitset order rows plus meet/join tables."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence


class NotALattice(ValueError):
    def __init__(self, pair, kind="join"):
        self.pair = pair
        self.kind = kind
        super().__init__(f"{kind}{tuple(pair)} missing")


class NotComparable(ValueError):
    pass


class Quadrilateral(NamedTuple):
    """Opposite sides a<b and c<d of a quadrilateral <a,b; c,d>."""

    a: int
    b: int
    c: int
    d: int


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class FiniteLattice:
    """A finite lattice (or, unchecked, a finite poset).

    ``up[a]`` is the bitmask of all elements ``b`` with ``a <= b`` and
    ``down[a]`` the bitmask of all elements below ``a``.  ``meet``/``join``
    hold ``None`` where the bound does not exist; `validate` reports those.
    """

    labels: tuple[str, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]
    meet: tuple[tuple[Optional[int], ...], ...]
    join: tuple[tuple[Optional[int], ...], ...]
    hasse: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def covers(self, a: int, b: int) -> bool:
        """True when b covers a."""
        return (a, b) in self._cover_set

    @property
    def _cover_set(self) -> frozenset:
        cached = self.__dict__.get("_covers_cache")
        if cached is None:
            cached = frozenset(self.hasse)
            object.__setattr__(self, "_covers_cache", cached)
        return cached

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown element {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(x) for x in labels]

    @property
    def bottom(self) -> int:
        return next(a for a in range(self.n) if self.up[a] == (1 << self.n) - 1)

    @property
    def top(self) -> int:
        return next(a for a in range(self.n) if self.down[a] == (1 << self.n) - 1)

    def upset(self, a: int) -> list[int]:
        return _bits(self.up[a])

    def downset(self, a: int) -> list[int]:
        return _bits(self.down[a])

    def order_pairs(self) -> list[tuple[int, int]]:
        """All pairs (a, b) with a <= b, reflexive pairs included."""
        return [(a, b) for a in range(self.n) for b in _bits(self.up[a])]

    def meet_all(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.meet[acc][x]
        return acc

    def join_all(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.join[acc][x]
        return acc

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, labels={list(self.labels)})"


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        up[a] |= 1 << b
    # Warshall on bitset rows
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    return up


def _greatest(candidates: int, down: Sequence[int]) -> Optional[int]:
    for x in _bits(candidates):
        if down[x] & candidates == candidates:
            return x
    return None


def _least(candidates: int, up: Sequence[int]) -> Optional[int]:
    for x in _bits(candidates):
        if up[x] & candidates == candidates:
            return x
    return None


def from_order(labels: Sequence[str], pairs: Iterable[tuple], check: bool = True) -> FiniteLattice:
    """Build a lattice from generating order pairs ``(lower, upper)``.

    Pairs may be given as indices or labels.  The reflexive-transitive closure
    is taken, then meet/join tables and Hasse edges are derived.  With
    ``check`` a missing meet or join raises `NotALattice`; a cycle in the
    generating pairs raises ``ValueError`` either way.
    """
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate element labels")
    n = len(labels)
    pos = {x: i for i, x in enumerate(labels)}
    idx_pairs = []
    for a, b in pairs:
        a = pos[a] if isinstance(a, str) else int(a)
        b = pos[b] if isinstance(b, str) else int(b)
        idx_pairs.append((a, b))
    up = _closure(n, idx_pairs)
    down = [0] * n
    for a in range(n):
        for b in _bits(up[a]):
            down[b] |= 1 << a
    for a in range(n):
        for b in range(a + 1, n):
            if up[a] >> b & 1 and up[b] >> a & 1:
                raise ValueError(f"order cycle between {labels[a]!r} and {labels[b]!r}")

    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = _greatest(down[a] & down[b], down)
            j = _least(up[a] & up[b], up)
            if check and j is None:
                raise NotALattice((labels[a], labels[b]), "join")
            if check and m is None:
                raise NotALattice((labels[a], labels[b]), "meet")
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j

    hasse = []
    for a in range(n):
        strict = up[a] & ~(1 << a)
        for b in _bits(strict):
            # b covers a unless some c strictly between them exists
            between = strict & down[b] & ~(1 << b)
            if not between:
                hasse.append((a, b))
    return FiniteLattice(
        labels=labels,
        up=tuple(up),
        down=tuple(down),
        meet=tuple(tuple(r) for r in meet),
        join=tuple(tuple(r) for r in join),
        hasse=tuple(sorted(hasse)),
    )


def validate(lat: FiniteLattice) -> list[str]:
    """Return the list of violated lattice invariants (empty when valid)."""
    n = lat.n
    problems: list[str] = []
    if n == 0:
        return ["empty lattice"]
    L = lat.labels
    for a in range(n):
        if not lat.leq(a, a):
            problems.append(f"leq not reflexive at {L[a]}")
        for b in range(n):
            if a != b and lat.leq(a, b) and lat.leq(b, a):
                if a < b:
                    problems.append(f"leq not antisymmetric on ({L[a]}, {L[b]})")
            if lat.leq(a, b) and lat.up[b] & ~lat.up[a]:
                problems.append(f"leq not transitive through ({L[a]}, {L[b]})")
            if lat.down[b] >> a & 1 != lat.up[a] >> b & 1:
                problems.append(f"up/down rows disagree on ({L[a]}, {L[b]})")
    if problems:
        return problems
    for a in range(n):
        for b in range(a, n):
            j, m = lat.join[a][b], lat.meet[a][b]
            if j is None:
                problems.append(f"join({L[a]},{L[b]}) missing")
            elif j != _least(lat.up[a] & lat.up[b], lat.up):
                problems.append(f"join({L[a]},{L[b]}) is not the least upper bound")
            if m is None:
                problems.append(f"meet({L[a]},{L[b]}) missing")
            elif m != _greatest(lat.down[a] & lat.down[b], lat.down):
                problems.append(f"meet({L[a]},{L[b]}) is not the greatest lower bound")
            if lat.join[b][a] != j or lat.meet[b][a] != m:
                problems.append(f"meet/join tables not symmetric at ({L[a]},{L[b]})")
    full = (1 << n) - 1
    if sum(1 for a in range(n) if lat.up[a] == full) != 1:
        problems.append("no unique bottom")
    if sum(1 for a in range(n) if lat.down[a] == full) != 1:
        problems.append("no unique top")
    expected = from_order(lat.labels, lat.order_pairs(), check=False).hasse
    if tuple(sorted(lat.hasse)) != expected:
        problems.append("hasse is not the transitive reduction of leq")
    return problems


def interval(lat: FiniteLattice, a: int, b: int) -> frozenset[int]:
    """Elements c with a <= c <= b."""
    if not lat.leq(a, b):
        raise NotComparable(f"{lat.labels[a]} is not below {lat.labels[b]}")
    return frozenset(_bits(lat.up[a] & lat.down[b]))


def interval_mask(lat: FiniteLattice, a: int, b: int) -> int:
    return lat.up[a] & lat.down[b]


def quadrilaterals(lat: FiniteLattice, covering: bool = False) -> list[Quadrilateral]:
    """All quadrilaterals <a,b; c,d>: a<b, c<d and
    (a v d = b and a ^ d = c) or (b v c = d and b ^ c = a).

    Sides are strict order pairs.  Restricting them to covering pairs
    (``covering=True``) loses witnesses: on N5 the non-congruence
    {0,a},{c},{b,1} is only caught by <b,1; 0,c> whose side 0<c is not a
    cover.  Every quadrilateral also appears with its sides swapped, since
    the two conditions mirror each other.
    """
    if covering:
        sides = list(lat.hasse)
    else:
        sides = [(a, b) for a, b in lat.order_pairs() if a != b]
    out = []
    for (a, b) in sides:
        for (c, d) in sides:
            if len({a, b, c, d}) < 4:
                continue
            if (lat.join[a][d] == b and lat.meet[a][d] == c) or (
                lat.join[b][c] == d and lat.meet[b][c] == a
            ):
                out.append(Quadrilateral(a, b, c, d))
    return out


# -- JSON lattice format ----------------------------------------------------

def lattice_to_dict(lat: FiniteLattice) -> dict:
    return {"labels": list(lat.labels), "covers": [list(e) for e in lat.hasse]}


def lattice_from_dict(data: dict) -> FiniteLattice:
    return from_order(data["labels"], [tuple(e) for e in data["covers"]])


def load_lattice(path) -> FiniteLattice:
    return lattice_from_dict(json.loads(Path(path).read_text()))


def compact_json(data: dict) -> str:
    """One top-level key per line, values inline."""
    rows = [f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in data.items()]
    return "{\n" + ",\n".join(rows) + "\n}\n"


def dump_lattice(lat: FiniteLattice, path) -> None:
    Path(path).write_text(compact_json(lattice_to_dict(lat)))


# -- small constructors -----------------------------------------------------

def chain(n: int, prefix: str = "c") -> FiniteLattice:
    labels = [f"{prefix}{i}" for i in range(n)]
    return from_order(labels, [(i, i + 1) for i in range(n - 1)])


def diamond() -> FiniteLattice:
    """M2: bottom, two incomparable atoms, top."""
    return from_order(["bot", "a", "b", "top"], [(0, 1), (0, 2), (1, 3), (2, 3)])


def pentagon() -> FiniteLattice:
    """N5: bot < a < c < top, bot < b < top."""
    return from_order(["bot", "a", "c", "b", "top"], [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def m3() -> FiniteLattice:
    return from_order(
        ["bot", "a", "b", "c", "top"],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )


def relabel(lat: FiniteLattice, perm: Sequence[int]) -> FiniteLattice:
    """Isomorphic copy where old element ``i`` becomes new element ``perm[i]``."""
    labels = [""] * lat.n
    for i, j in enumerate(perm):
        labels[j] = lat.labels[i]
    return from_order(labels, [(perm[a], perm[b]) for a, b in lat.hasse])


__all__ = [
    "FiniteLattice",
    "NotALattice",
    "NotComparable",
    "Quadrilateral",
    "chain",
    "diamond",
    "dump_lattice",
    "from_order",
    "interval",
    "interval_mask",
    "lattice_from_dict",
    "lattice_to_dict",
    "load_lattice",
    "m3",
    "pentagon",
    "quadrilaterals",
    "relabel",
    "validate",
]

