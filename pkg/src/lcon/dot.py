"""Graphviz DOT text for lattices, partitions and quotient posets."""

from __future__ import annotations

from typing import Optional, Sequence

from .lattice import FiniteLattice
from .partitions import Partition


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _body(lat: FiniteLattice, p: Optional[Partition], prefix: str = "", indent: str = "  ") -> list[str]:
    L = lat.labels
    name = lambda x: _q(prefix + L[x])
    out = []
    if p is None:
        out += [f"{indent}{name(x)} [label={_q(L[x])}];" for x in range(lat.n)]
    else:
        for k, blk in enumerate(p.blocks):
            out.append(f"{indent}subgraph {_q(f'cluster_{prefix}{k}')} {{")
            out.append(f"{indent}  style=rounded;")
            out += [f"{indent}  {name(x)} [label={_q(L[x])}];" for x in blk]
            out.append(f"{indent}}}")
    out += [f"{indent}{name(a)} -> {name(b)};" for a, b in lat.hasse]
    return out


def lattice_dot(lat: FiniteLattice, p: Optional[Partition] = None, title: str = "L") -> str:
    """Hasse diagram, bottom at the bottom; each block of ``p`` becomes a cluster."""
    lines = [f"digraph {_q(title)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    lines += _body(lat, p)
    lines.append("}")
    return "\n".join(lines) + "\n"


def partitions_dot(lat: FiniteLattice, stages: Sequence[tuple[str, Partition]], title: str = "stages") -> str:
    """Several partitions of one lattice side by side, one subgraph per stage."""
    lines = [f"digraph {_q(title)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i, (name, p) in enumerate(stages):
        lines.append(f"  subgraph {_q(f'cluster_stage{i}')} {{")
        lines.append(f"    label={_q(name)};")
        lines += _body(lat, p, prefix=f"s{i}:", indent="    ")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(q, title: str = "quotient") -> str:
    """Hasse diagram of a quotient poset; nodes are labelled by their members."""
    return lattice_dot(q.poset, None, title)
