"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 invalid lattice or partition,
4 pipeline error.  Relative output paths are resolved against
``$LCON_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .closure import LatticeTooLarge, enumerate_local_congruences
from .dot import lattice_dot, partitions_dot, quotient_dot
from .fca import FormalContext, ParseError, UnknownAttribute, concept_lattice, concepts, load_context
from .lattice import NotALattice, lattice_to_dict, load_lattice
from .partitions import (Partition, convexity_violation, is_congruence, is_local_congruence,
                         load_partition, partition_to_dict, quadrilateral_violation,
                         sublattice_violation)
from .quotient import all_cycles_closed, missing_bound, open_cycle, quotient_poset
from .reduce import closed_local_congruences_above, reduce, reduce_partition

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PIPELINE = 0, 2, 3, 4
OUTPUT_ENV = "LCON_OUTPUT_DIR"


class LabelMismatch(ValueError):
    pass


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


@dataclass
class RunConfig:
    command: str
    input: Optional[Path] = None
    lattice: Optional[Path] = None
    partition: Optional[Path] = None
    D: list[str] = field(default_factory=list)
    out: Optional[Path] = None
    trace: Optional[Path] = None
    dot: Optional[Path] = None
    oracle_check: bool = False
    max_oracle_n: int = 8
    method: str = "bruteforce"


def _out_path(p) -> Optional[Path]:
    if p is None:
        return None
    p = Path(p)
    base = os.environ.get(OUTPUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(text: str, out) -> None:
    path = _out_path(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _load_ctx(path):
    try:
        return load_context(path)
    except (ParseError, json.JSONDecodeError, KeyError, ValueError) as e:
        raise CliError(EXIT_PARSE, f"cannot parse context {path}: {e}") from None


def _load_lattice(path):
    try:
        return load_lattice(path)
    except NotALattice as e:
        raise CliError(EXIT_INVALID, f"{path}: {e}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise CliError(EXIT_PARSE, f"cannot parse lattice {path}: {e}") from None
    except ValueError as e:
        raise CliError(EXIT_INVALID, f"{path}: {e}") from None


def _load_partition(lat, path):
    try:
        return load_partition(lat, path)
    except (json.JSONDecodeError, TypeError) as e:
        raise CliError(EXIT_PARSE, f"cannot parse partition {path}: {e}") from None
    except KeyError as e:
        raise CliError(EXIT_INVALID, f"{path}: {LabelMismatch(f'unknown element {e}')}") from None
    except ValueError as e:
        raise CliError(EXIT_INVALID, f"{path}: {e}") from None


def _lattice_and_partition(cfg: RunConfig):
    if cfg.lattice is None:
        raise CliError(EXIT_PARSE, "--lattice is required")
    lat = _load_lattice(cfg.lattice)
    p = _load_partition(lat, cfg.partition) if cfg.partition else Partition.identity(lat)
    return lat, p


# -- commands ---------------------------------------------------------------

def cmd_concepts(cfg: RunConfig) -> int:
    ctx = _load_ctx(cfg.input)
    cl = concepts(ctx, cfg.method) if isinstance(ctx, FormalContext) else concept_lattice(ctx)
    out = {"concepts": cl.table(), "lattice": lattice_to_dict(cl.lattice)}
    _emit(json.dumps(out, indent=2, ensure_ascii=False) + "\n", cfg.out)
    return EXIT_OK


def cmd_reduce(cfg: RunConfig) -> int:
    if cfg.input is not None:
        ctx = _load_ctx(cfg.input)
        if not cfg.D:
            raise CliError(EXIT_PARSE, "-D is required with a context")
        cl = concept_lattice(ctx)
        try:
            rep = reduce(cl, cfg.D, source=str(cfg.input))
        except UnknownAttribute as e:
            raise CliError(EXIT_INVALID, f"unknown attribute {e}") from None
    else:
        _, p = _lattice_and_partition(cfg)
        rep = reduce_partition(p)
        rep.source = str(cfg.partition or cfg.lattice)
    data = rep.to_dict()
    if cfg.oracle_check:
        if rep.lattice.n > cfg.max_oracle_n:
            raise CliError(EXIT_PIPELINE, f"lattice has {rep.lattice.n} elements, oracle cap is {cfg.max_oracle_n}")
        mins = closed_local_congruences_above(rep.rho_D, cfg.max_oracle_n)
        data["oracle"] = {"minimal": [partition_to_dict(m)["blocks"] for m in mins],
                          "agrees": mins == [rep.final_delta]}
    _emit(json.dumps(data, indent=2, ensure_ascii=False) + "\n", cfg.out)
    if cfg.trace:
        _emit("".join(t.to_jsonl(rep.lattice) for t in rep.traces), cfg.trace)
    if cfg.dot:
        d = _out_path(cfg.dot)
        d.mkdir(parents=True, exist_ok=True)
        stages = [("rho_D", rep.rho_D), ("delta_D", rep.delta_D)]
        for i, it in enumerate(rep.iterations, 1):
            stages += [(f"rho_{i}", it.rho), (f"delta_{i}", it.closure)]
        (d / "lattice.dot").write_text(lattice_dot(rep.lattice, rep.final_delta))
        (d / "stages.dot").write_text(partitions_dot(rep.lattice, stages))
        (d / "quotient.dot").write_text(quotient_dot(rep.quotient))
    if cfg.oracle_check and not data["oracle"]["agrees"]:
        print("oracle disagrees with the pipeline", file=sys.stderr)
        return EXIT_PIPELINE
    return EXIT_OK


def check_report(p: Partition) -> list[str]:
    """Human-readable classification of a partition, one finding per line."""
    L = p.lattice.labels
    names = lambda xs: ",".join(L[x] for x in xs)
    lines = []
    if not is_local_congruence(p):
        for k in range(len(p)):
            v = sublattice_violation(p, k)
            if v:
                kind, a, b, e = v
                lines.append(f"not a local congruence: {kind}({L[a]},{L[b]}) = {L[e]} leaves the class")
                break
            c = convexity_violation(p, k)
            if c:
                lines.append(f"not a local congruence: convexity witness {L[c[2]]} between {L[c[0]]} and {L[c[1]]}")
                break
        return lines
    if is_congruence(p):
        lines.append("congruence")
    else:
        q = quadrilateral_violation(p)
        lines.append(f"local congruence; not quadrilateral-closed, witness <{L[q.a]},{L[q.b]};{L[q.c]},{L[q.d]}>")
    if all_cycles_closed(p):
        qp = quotient_poset(p)
        mb = missing_bound(qp)
        if mb:
            lines.append(f"cycles closed; quotient is not a lattice: no {mb[0]} of {qp.labels[mb[1]]} and {qp.labels[mb[2]]}")
        else:
            lines.append("cycles closed; quotient is a lattice")
    else:
        lines.append(f"cycles NOT closed; witness cycle ({names(open_cycle(p))})")
    return lines


def cmd_check(cfg: RunConfig) -> int:
    _, p = _lattice_and_partition(cfg)
    _emit("\n".join(check_report(p)) + "\n", cfg.out)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    lat, _ = _lattice_and_partition(cfg)
    try:
        found = enumerate_local_congruences(lat, cfg.max_oracle_n)
    except LatticeTooLarge as e:
        raise CliError(EXIT_PIPELINE, str(e)) from None
    out = {"count": len(found), "local_congruences": [partition_to_dict(p)["blocks"] for p in found]}
    _emit(json.dumps(out, indent=2) + "\n", cfg.out)
    return EXIT_OK


def cmd_export_dot(cfg: RunConfig) -> int:
    if cfg.input is not None:
        lat, p = concept_lattice(_load_ctx(cfg.input)).lattice, None
    else:
        lat, p = _lattice_and_partition(cfg)
        if cfg.partition is None:
            p = None
    _emit(lattice_dot(lat, p), cfg.out)
    return EXIT_OK


COMMANDS = {
    "concepts": cmd_concepts,
    "reduce": cmd_reduce,
    "check": cmd_check,
    "enumerate-lcon": cmd_enumerate,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcon", description="Reduce concept lattices with local congruences.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, context=True, lattice=True):
        if context:
            sp.add_argument("input", nargs="?", type=Path, help=".cxt or fuzzy JSON context")
        if lattice:
            sp.add_argument("--lattice", type=Path, help="lattice JSON")
            sp.add_argument("--partition", type=Path, help="partition JSON")
        sp.add_argument("-o", "--out", type=Path, help="write output here instead of stdout")

    sp = sub.add_parser("concepts", help="list the concepts of a context")
    common(sp, lattice=False)
    sp.add_argument("--method", choices=["bruteforce", "nextclosure"], default="bruteforce")

    sp = sub.add_parser("reduce", help="run the reduction pipeline")
    common(sp)
    sp.add_argument("-D", type=lambda s: [x for x in s.split(",") if x], default=[], help="comma-separated attributes")
    sp.add_argument("--trace", type=Path, help="write closure merges as JSON lines")
    sp.add_argument("--dot", type=Path, help="directory for DOT diagrams")
    sp.add_argument("--oracle-check", action="store_true", help="compare with the exhaustive oracle")
    sp.add_argument("--max-oracle-n", type=int, default=8)

    sp = sub.add_parser("check", help="classify a partition of a lattice")
    common(sp, context=False)

    sp = sub.add_parser("enumerate-lcon", help="list all local congruences of a small lattice")
    common(sp, context=False)
    sp.add_argument("--max-oracle-n", type=int, default=8)

    sp = sub.add_parser("export-dot", help="DOT for a lattice (clusters for a partition)")
    common(sp)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    try:
        return COMMANDS[cfg.command](cfg)
    except CliError as e:
        print(f"lcon: {e}", file=sys.stderr)
        return e.code
    except OSError as e:
        print(f"lcon: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as e:  # anything raised inside the pipeline
        print(f"lcon: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
