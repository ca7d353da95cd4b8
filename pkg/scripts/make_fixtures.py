"""Regenerate the bundled example files in src/lcon/data."""

from pathlib import Path

from lcon.fca import FormalContext, concepts, write_cxt
from lcon.lattice import compact_json, dump_lattice, from_order
from lcon.partitions import Partition, dump_partition

DATA = Path(__file__).resolve().parents[1] / "src" / "lcon" / "data"


def planets():
    objs = ["M", "V", "E", "Ma", "J", "S", "U", "N", "P"]
    rows = {
        "ss": [1, 1, 1, 1, 0, 0, 0, 0, 1],
        "ms": [0, 0, 0, 0, 0, 0, 1, 1, 0],
        "ls": [0, 0, 0, 0, 1, 1, 0, 0, 0],
        "ns": [1, 1, 1, 1, 0, 0, 0, 0, 0],
        "fs": [0, 0, 0, 0, 1, 1, 1, 1, 1],
        "my": [0, 0, 1, 1, 1, 1, 1, 1, 1],
        "mn": [1, 1, 0, 0, 0, 0, 0, 0, 0],
    }
    ctx = FormalContext.from_matrix(list(rows), objs, list(rows.values()))
    (DATA / "planets.cxt").write_text(write_cxt(ctx))
    # a cycle-closed local congruence on the planets lattice with the
    # 8-class quotient (bot < b, d; b < g', f'; d < j'; g' < j', i; f' < i)
    cl = concepts(ctx)
    delta = Partition.from_blocks(cl.lattice, [["C1", "C6"], ["C2", "C7"], ["C5", "C9", "C10"]])
    dump_partition(delta, DATA / "planets_closed_delta.json")
    ones = FormalContext.from_matrix(["a"], ["g"], [[1]])
    (DATA / "ones_1x1.cxt").write_text(write_cxt(ones))


def fuzzy():
    data = {
        "chain": [0, 0.5, 1],
        "attributes": ["a1", "a2", "a3", "a4"],
        "objects": ["b1", "b2", "b3"],
        "R": [[1, 0, 0], [0, 0.5, 0], [0, 0, 1], [0, 0.5, 1]],
        "concept_order": [
            [0, 0, 0], [1, 0, 0], [0, 0.5, 0], [0, 0, 1],
            [1, 1, 1], [0, 1, 0], [0, 0.5, 1], [0, 1, 1],
        ],
    }
    (DATA / "fuzzy_small.json").write_text(compact_json(data))


def lattice_with(name, labels, covers, blocks, suffix):
    lat = from_order(labels, covers)
    dump_lattice(lat, DATA / f"{name}.json")
    dump_partition(Partition.from_blocks(lat, blocks), DATA / f"{name}_{suffix}.json")


def twisted():
    labels = ["bot", "x1", "c1", "y1", "x2", "c2", "y2", "top"]
    covers = [("bot", "x1"), ("bot", "c1"), ("bot", "y1"), ("x1", "x2"), ("c1", "c2"),
              ("y1", "y2"), ("x2", "top"), ("c2", "top"), ("y2", "top"),
              ("x1", "c2"), ("c1", "y2"), ("y1", "x2")]
    lattice_with("twisted", labels, covers, [["x1", "x2"], ["c1", "c2"], ["y1", "y2"]], "delta")


def nonlattice():
    labels = ["bot", "x", "y", "p2", "q2", "xy", "p1", "q1", "z", "top"]
    covers = [("bot", "x"), ("bot", "y"), ("bot", "p2"), ("bot", "q2"), ("x", "xy"),
              ("y", "xy"), ("y", "p1"), ("x", "q1"), ("p2", "p1"), ("q2", "q1"),
              ("p2", "z"), ("q2", "z"), ("xy", "top"), ("p1", "top"), ("q1", "top"),
              ("z", "top")]
    lattice_with("nonlattice", labels, covers, [["p1", "p2"], ["q1", "q2"]], "delta")


def twostage():
    labels = ["bot"] + [f"p{i}" for i in range(17)] + ["top"]
    up = {
        "bot": ["p0", "p1", "p2"],
        "p0": ["p3", "p4", "p5"], "p1": ["p5", "p6", "p7"], "p2": ["p3", "p7", "p8"],
        "p3": ["p9"], "p4": ["p9"], "p5": ["p10"], "p6": ["p10"], "p7": ["p11"], "p8": ["p11"],
        "p9": ["p12"], "p10": ["p12"], "p11": ["p12"], "p12": ["p13"],
        "p13": ["p14", "p15"], "p14": ["p16"], "p16": ["top"], "p15": ["top"],
    }
    covers = [(a, b) for a, bs in up.items() for b in bs]
    blocks = [["p3", "p4", "p9"], ["p5", "p6", "p10"], ["p7", "p8", "p11"],
              ["p14", "p16"], ["p15", "top"]]
    lattice_with("twostage", labels, covers, blocks, "rhoD")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    planets()
    fuzzy()
    twisted()
    nonlattice()
    twostage()
    print("wrote", sorted(p.name for p in DATA.iterdir()))
