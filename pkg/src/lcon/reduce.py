"""End-to-end reduction: induced relation -> least local congruence -> cycle repair -> quotient."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .closure import ClosureTrace, enumerate_local_congruences, least_congruence, least_local_congruence
from .fca import ConceptLattice, induced_relation
from .lattice import FiniteLattice, lattice_to_dict
from .partitions import (Partition, is_congruence, is_local_congruence, partition_to_dict,
                         quadrilateral_violation, refines)
from .quotient import QuotientPoset, all_cycles_closed, open_cycle, quotient_poset, rho_delta


@dataclass
class Iteration:
    rho: Partition              # SCC merge of the previous δ
    rho_is_local: bool
    closure: Partition          # least local congruence containing rho
    open_cycle: Optional[tuple[int, ...]]  # the cycle that triggered this pass


@dataclass
class ReductionReport:
    lattice: FiniteLattice
    rho_D: Partition
    delta_D: Partition
    iterations: list[Iteration]
    final_delta: Partition
    quotient: QuotientPoset
    congruence: Partition       # least congruence containing rho_D
    source: str = ""
    D: tuple[str, ...] = ()
    traces: list[ClosureTrace] = field(default_factory=list)

    @property
    def passes(self) -> int:
        """Number of repair passes; the one-pass claim says this is at most 1."""
        return len(self.iterations)

    @property
    def comparison(self) -> tuple[int, int]:
        return len(self.final_delta), len(self.congruence)

    def to_dict(self) -> dict:
        L = self.lattice.labels

        def blocks(p):
            return partition_to_dict(p)["blocks"]

        quad = quadrilateral_violation(self.final_delta)
        return {
            "source": self.source,
            "D": list(self.D),
            "lattice": lattice_to_dict(self.lattice),
            "rho_D": blocks(self.rho_D),
            "delta_D": blocks(self.delta_D),
            "delta_D_cycles_closed": not self.iterations,
            "iterations": [
                {
                    "open_cycle": [L[x] for x in it.open_cycle] if it.open_cycle else None,
                    "rho": blocks(it.rho),
                    "rho_is_local_congruence": it.rho_is_local,
                    "closure": blocks(it.closure),
                }
                for it in self.iterations
            ],
            "final_delta": blocks(self.final_delta),
            "final_is_congruence": is_congruence(self.final_delta),
            "quadrilateral_witness": [L[x] for x in quad] if quad else None,
            "quotient": {
                "labels": list(self.quotient.labels),
                "covers": [[self.quotient.labels[a], self.quotient.labels[b]] for a, b in self.quotient.hasse],
            },
            "comparison": {"local": len(self.final_delta), "congruence": len(self.congruence)},
            "congruence": blocks(self.congruence),
            "passes": self.passes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def reduce_partition(start: Partition, max_passes: Optional[int] = None) -> ReductionReport:
    """Run the pipeline from an arbitrary starting partition of a lattice."""
    lat = start.lattice
    delta_D, trace = least_local_congruence(start)
    traces = [trace]
    delta = delta_D
    iterations = []
    limit = lat.n if max_passes is None else max_passes
    while not all_cycles_closed(delta):
        if len(iterations) >= limit:
            raise RuntimeError("cycle repair did not converge")
        cyc = open_cycle(delta)
        rho = rho_delta(delta)
        local = is_local_congruence(rho)
        if local:
            nxt = rho
        else:
            nxt, t = least_local_congruence(rho)
            traces.append(t)
        iterations.append(Iteration(rho, local, nxt, cyc))
        delta = nxt
    return ReductionReport(
        lattice=lat,
        rho_D=start,
        delta_D=delta_D,
        iterations=iterations,
        final_delta=delta,
        quotient=quotient_poset(delta),
        congruence=least_congruence(start)[0],
        traces=traces,
    )


def reduce(cl: ConceptLattice, D: Sequence[str], source: str = "") -> ReductionReport:
    """Reduce a concept lattice by the relation that the attribute subset D induces."""
    if not D:
        raise ValueError("attribute subset D is empty")
    rho = induced_relation(cl, D)
    rep = reduce_partition(rho)
    rep.source = source
    rep.D = tuple(D)
    return rep


def compare_with_congruence(cl: ConceptLattice, D: Sequence[str]) -> tuple[int, int]:
    return reduce(cl, D).comparison


def closed_local_congruences_above(start: Partition, max_n: int = 8) -> list[Partition]:
    """Exhaustive oracle: the ⊑-minimal cycle-closed local congruences containing ``start``."""
    above = [q for q in enumerate_local_congruences(start.lattice, max_n)
             if refines(start, q) and all_cycles_closed(q)]
    return [q for q in above if not any(r != q and refines(r, q) for r in above)]
