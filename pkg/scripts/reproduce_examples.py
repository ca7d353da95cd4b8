"""Print the results for every bundled example: concept tables, induced
partitions, closures, cycle witnesses and quotients."""

from importlib.resources import files

from lcon.closure import least_congruence, least_local_congruence
from lcon.fca import concept_lattice, load_context
from lcon.lattice import load_lattice
from lcon.partitions import load_partition, quadrilateral_violation
from lcon.quotient import all_cycles_closed, missing_bound, open_cycle, quotient_poset
from lcon.reduce import reduce, reduce_partition

DATA = files("lcon") / "data"


def names(lat, xs):
    return "(" + ",".join(lat.labels[x] for x in xs) + ")"


def contexts():
    for fname, D in [("planets.cxt", ["ss", "ms", "ns", "my"]), ("fuzzy_small.json", ["a1", "a2"])]:
        cl = concept_lattice(load_context(DATA / fname))
        print(f"== {fname}: {len(cl)} concepts")
        for row in cl.table():
            print(f"  {row['label']:>4}  extent={row['extent']}  intent={row['intent']}")
        rep = reduce(cl, D)
        q = quadrilateral_violation(rep.rho_D)
        print(f"  D={D}")
        print(f"  rho_D        {rep.rho_D}  ({len(rep.rho_D)} classes)")
        print(f"  local fixpoint unchanged: {rep.delta_D == rep.rho_D}")
        print(f"  quadrilateral witness: {names(cl.lattice, q) if q else None}")
        print(f"  least congruence {rep.congruence}  ({len(rep.congruence)} classes)")


def lattices():
    for name, suffix in [("twisted", "delta"), ("nonlattice", "delta"), ("twostage", "rhoD")]:
        lat = load_lattice(DATA / f"{name}.json")
        p = load_partition(lat, DATA / f"{name}_{suffix}.json")
        print(f"== {name}: {lat.n} elements, start {p}")
        delta, _ = least_local_congruence(p)
        if all_cycles_closed(delta):
            q = quotient_poset(delta)
            mb = missing_bound(q)
            print(f"  cycles closed; quotient has {len(q)} classes; "
                  + (f"no {mb[0]} of {q.labels[mb[1]]} and {q.labels[mb[2]]}" if mb else "a lattice"))
        else:
            start = lat.index("p0") if "p0" in lat.labels else None
            print(f"  open cycle {names(lat, open_cycle(delta, start))}")
            rep = reduce_partition(p)
            for i, it in enumerate(rep.iterations, 1):
                print(f"  pass {i}: rho={it.rho} local={it.rho_is_local}")
                print(f"          closure={it.closure}")
            print(f"  quotient: {' < '.join(rep.quotient.labels)}")
        print(f"  least congruence: {least_congruence(p)[0]}")


if __name__ == "__main__":
    contexts()
    lattices()
