"""Exhaustive catalog of small lattices up to isomorphism.

Every finite lattice with n >= 2 elements is a poset on n - 2 inner elements
with a bottom and a top adjoined.  Inner posets are enumerated as naturally
labelled transitive relations (every poset has a linear extension), bounded,
filtered for the lattice property and deduplicated by a brute-force
canonical form.  Fine up to n = 8.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .lattice import FiniteLattice, NotALattice, from_order

# OEIS A006966: number of lattices on n unlabeled nodes
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222}


def _inner_posets(k: int):
    slots = list(combinations(range(k), 2))
    for mask in range(1 << len(slots)):
        rel = {slots[i] for i in range(len(slots)) if mask >> i & 1}
        if all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            yield rel


def _canonical_key(n: int, pairs: frozenset) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in pairs))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def lattices_of_size(n: int) -> tuple[FiniteLattice, ...]:
    """All lattices with exactly n elements, one per isomorphism class."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (from_order(["0"], []),)
    k = n - 2
    labels = ["bot"] + [f"e{i}" for i in range(1, k + 1)] + ["top"]
    seen = set()
    out = []
    for rel in _inner_posets(k):
        pairs = {(a + 1, b + 1) for a, b in rel}
        pairs |= {(0, i) for i in range(1, n)} | {(i, n - 1) for i in range(1, n - 1)}
        try:
            lat = from_order(labels, sorted(pairs))
        except NotALattice:
            continue
        # bounds are fixed, so canonicalise the inner order only
        key = _canonical_key(k, frozenset(rel))
        if key in seen:
            continue
        seen.add(key)
        out.append(lat)
    return tuple(out)


def lattice_catalog(max_n: int) -> list[FiniteLattice]:
    """All lattices with 1..max_n elements up to isomorphism."""
    return [lat for n in range(1, max_n + 1) for lat in lattices_of_size(n)]
