import networkx as nx
import pytest

from lcon.closure import enumerate_congruences, enumerate_local_congruences, least_local_congruence
from lcon.fca import concept_lattice, load_context
from lcon.lattice import chain, diamond, load_lattice
from lcon.partitions import Partition, is_local_congruence, load_partition, refines
from lcon.quotient import (CyclesNotClosed, NotLocalCongruence, all_cycles_closed, class_preorder,
                           find_delta_sequence, is_quotient_lattice, missing_bound, open_cycle,
                           quotient_poset, rho_delta)

from conftest import DATA, SMALL, blocks


def labels(lat, xs):
    return tuple(lat.labels[x] for x in xs)


def test_identity_digraph_is_order():
    d = diamond()
    p = Partition.identity(d)
    dg = class_preorder(p)
    assert all(dg.preceq(a, b) == d.leq(a, b) for a in range(4) for b in range(4))
    q = quotient_poset(p)
    assert set(q.hasse) == set(d.hasse)
    assert is_quotient_lattice(q)


def test_full_partition_quotient():
    q = quotient_poset(Partition.full(diamond()))
    assert len(q) == 1 and is_quotient_lattice(q)


def test_requires_local_congruence():
    p = Partition.from_blocks(chain(3), [["c0", "c2"]])
    with pytest.raises(NotLocalCongruence):
        class_preorder(p)


def test_trivial_sequence():
    p = Partition.identity(chain(3))
    assert find_delta_sequence(p, 1, 1) == (1,)
    assert find_delta_sequence(p, 2, 0) is None


def test_twisted_mutual_reachability(twisted):
    lat, p = twisted
    x, y = p.block_of[lat.index("x1")], p.block_of[lat.index("y1")]
    dg = class_preorder(p)
    assert x != y and dg.preceq(x, y) and dg.preceq(y, x)
    seq = find_delta_sequence(p, lat.index("x1"), lat.index("y2"))
    assert labels(lat, seq) == ("x1", "c2", "c1", "y2")


def test_twisted_witness_cycle(twisted):
    lat, p = twisted
    assert not all_cycles_closed(p)
    cyc = open_cycle(p)
    assert labels(lat, cyc) == ("x1", "c2", "c1", "y2", "y1", "x2", "x1")
    with pytest.raises(CyclesNotClosed) as e:
        quotient_poset(p)
    assert e.value.witness == cyc


def test_twisted_rho_delta(twisted):
    lat, p = twisted
    r = rho_delta(p)
    assert blocks(r) == {frozenset({"bot"}), frozenset({"top"}),
                         frozenset({"x1", "x2", "c1", "c2", "y1", "y2"})}


def _is_delta_cycle(p, seq):
    lat = p.lattice
    return seq[0] == seq[-1] and all(p.same(a, b) or lat.leq(a, b) for a, b in zip(seq, seq[1:]))


def test_twostage_cycle_through_p0(twostage):
    lat, rho = twostage
    delta, _ = least_local_congruence(rho)
    cyc = open_cycle(delta, start=lat.index("p0"))
    assert labels(lat, cyc) == ("p0", "p5", "p1", "p7", "p2", "p3", "p0")
    assert _is_delta_cycle(delta, cyc)


def test_planets_closed_quotient():
    cl = concept_lattice(load_context(DATA / "planets.cxt"))
    p = load_partition(cl.lattice, DATA / "planets_closed_delta.json")
    assert all_cycles_closed(p)
    q = quotient_poset(p)
    target = nx.DiGraph([("bot", "b"), ("bot", "d"), ("b", "g"), ("b", "f"), ("d", "j"),
                         ("g", "j"), ("g", "i"), ("f", "i"), ("i", "top"), ("j", "top")])
    assert len(q) == 8
    assert nx.is_isomorphic(nx.DiGraph(list(q.hasse)), target)


def test_nonlattice_not_a_lattice(nonlattice):
    lat, p = nonlattice
    assert all_cycles_closed(p)
    q = quotient_poset(p)
    assert len(q) == 8
    kind, a, b = missing_bound(q)
    assert kind == "join"
    assert {q.labels[a], q.labels[b]} == {"{x}", "{y}"}
    assert not is_quotient_lattice(q)


def _oracle_lattices():
    return SMALL + [load_lattice(DATA / "twisted.json")]


def test_digraph_reachability_equals_sequences():
    # reachability in the block digraph vs a direct search over alternating steps
    for lat in _oracle_lattices():
        for p in enumerate_local_congruences(lat):
            dg = class_preorder(p)
            for x in range(lat.n):
                for y in range(lat.n):
                    seq = find_delta_sequence(p, x, y)
                    assert (seq is not None) == dg.preceq(p.block_of[x], p.block_of[y])
                    if seq is not None:
                        assert all(p.same(a, b) or lat.leq(a, b) for a, b in zip(seq, seq[1:]))


def test_cycles_closed_iff_antisymmetric():
    seen_open = 0
    for lat in _oracle_lattices():
        for p in enumerate_local_congruences(lat):
            dg = class_preorder(p)
            k = len(p)
            antisym = all(not (dg.preceq(a, b) and dg.preceq(b, a)) for a in range(k) for b in range(k) if a != b)
            assert all_cycles_closed(p) == antisym
            if not antisym:
                seen_open += 1
                cyc = open_cycle(p)
                assert _is_delta_cycle(p, cyc)
                assert len({p.block_of[x] for x in cyc}) > 1
    assert seen_open > 0


def test_preorder_reflexive_transitive():
    for lat in SMALL[::3]:
        for p in enumerate_local_congruences(lat):
            dg = class_preorder(p)
            k = len(p)
            for a in range(k):
                assert dg.preceq(a, a)
                for b in range(k):
                    for c in range(k):
                        if dg.preceq(a, b) and dg.preceq(b, c):
                            assert dg.preceq(a, c)


def test_congruence_quotient_order():
    for lat in SMALL:
        for p in enumerate_congruences(lat):
            q = quotient_poset(p)
            for a in range(lat.n):
                for b in range(lat.n):
                    ba, bb = p.block_of[a], p.block_of[b]
                    assert q.leq(ba, bb) == p.same(lat.meet[a][b], a)
            assert is_quotient_lattice(q)


def test_rho_delta_extensive_idempotent():
    for lat in _oracle_lattices():
        for p in enumerate_local_congruences(lat):
            r = rho_delta(p)
            assert refines(p, r)
            if all_cycles_closed(p):
                assert r == p
            if is_local_congruence(r):
                assert rho_delta(r) == r
