"""How many repair passes does the pipeline need, and is its result the unique
minimal cycle-closed local congruence above the start?

Runs every partition of every lattice in the catalog up to --max-n elements.
"""

import argparse
import time
from collections import Counter

from lcon.catalog import lattice_catalog
from lcon.closure import all_partitions, enumerate_local_congruences
from lcon.partitions import refines
from lcon.quotient import all_cycles_closed
from lcon.reduce import reduce_partition


def study(max_n: int):
    passes = Counter()
    non_unique = disagree = total = 0
    for lat in lattice_catalog(max_n):
        closed = [q for q in enumerate_local_congruences(lat, max_n) if all_cycles_closed(q)]
        for p in all_partitions(lat):
            total += 1
            rep = reduce_partition(p)
            passes[rep.passes] += 1
            above = [q for q in closed if refines(p, q)]
            mins = [q for q in above if not any(r != q and refines(r, q) for r in above)]
            if len(mins) != 1:
                non_unique += 1
            elif mins[0] != rep.final_delta:
                disagree += 1
    return total, passes, non_unique, disagree


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()
    t = time.perf_counter()
    total, passes, non_unique, disagree = study(args.max_n)
    print(f"partitions checked: {total}")
    print(f"repair passes histogram: {dict(sorted(passes.items()))}")
    print(f"starts with no unique minimum: {non_unique}")
    print(f"pipeline != oracle minimum: {disagree}")
    print(f"elapsed: {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
