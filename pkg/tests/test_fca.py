from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lcon.fca import (EmptyAttributeSet, FiniteChain, FormalContext, FuzzyContext, GradeNotInChain,
                      ParseError, UnknownAttribute, class_max, closed_extents_bruteforce,
                      closed_extents_next_closure, concept_lattice, concepts, down, fuzzy_concepts,
                      fuzzy_down, fuzzy_from_dict, fuzzy_to_dict, fuzzy_up, induced_relation,
                      read_cxt, residuum, up, write_cxt)
from lcon.lattice import validate
from lcon.partitions import Partition, refines

from conftest import DATA

H = Fraction(1, 2)


@st.composite
def crisp_contexts(draw, max_attrs=5, max_objs=5):
    na = draw(st.integers(1, max_attrs))
    nb = draw(st.integers(1, max_objs))
    R = draw(st.lists(st.lists(st.integers(0, 1), min_size=nb, max_size=nb), min_size=na, max_size=na))
    return FormalContext.from_matrix([f"a{i}" for i in range(na)], [f"g{j}" for j in range(nb)], R)


def test_derivation_planets(planets):
    ctx = planets.context
    assert up(ctx, ["E", "Ma"]) == {"ss", "ns", "my"}
    assert down(ctx, ["ss", "ns"]) == {"M", "V", "E", "Ma"}
    assert up(ctx, []) == set(ctx.attributes)
    assert down(ctx, []) == set(ctx.objects)


def test_planets_concept_count(planets):
    # frozen from the brute-force closure of all 2^9 object sets
    assert len(planets) == 12
    assert validate(planets.lattice) == []


def test_one_by_one_context():
    cl = concepts(read_cxt((DATA / "ones_1x1.cxt").read_text()))
    assert len(cl) == 1


@given(crisp_contexts())
def test_next_closure_matches_bruteforce(ctx):
    assert sorted(closed_extents_next_closure(ctx)) == sorted(closed_extents_bruteforce(ctx))


@given(crisp_contexts())
def test_next_closure_lectic_order(ctx):
    extents = closed_extents_next_closure(ctx)
    assert len(set(extents)) == len(extents)

    def lectic_key(m):
        # the smallest object where two sets differ belongs to the larger one
        return [m >> i & 1 for i in range(len(ctx.objects))]

    assert extents == sorted(extents, key=lectic_key)


@given(crisp_contexts())
def test_concepts_are_fixpoints(ctx):
    cl = concepts(ctx, "nextclosure")
    for c in cl.concepts:
        assert up(ctx, c.extent) == c.intent
        assert down(ctx, c.intent) == c.extent
    assert validate(cl.lattice) == []


@given(crisp_contexts())
def test_cxt_round_trip(ctx):
    back = read_cxt(write_cxt(ctx))
    assert back == ctx


def test_cxt_errors():
    with pytest.raises(ParseError):
        read_cxt("X\n")
    with pytest.raises(ParseError):
        read_cxt("B\n\n1\n1\n\ng\na\nXX\n")


def test_unknown_labels(planets):
    with pytest.raises(UnknownAttribute):
        induced_relation(planets, ["nope"])
    with pytest.raises(EmptyAttributeSet):
        induced_relation(planets, [])


def test_chain_and_residuum():
    ch = FiniteChain([0, 0.5, 1])
    assert ch.grades == (0, H, 1)
    assert residuum(ch, H, 0) == 0
    assert residuum(ch, H, 1) == 1
    assert residuum(ch, 1, H) == H
    with pytest.raises(GradeNotInChain):
        ch.index(0.25)
    with pytest.raises(ValueError):
        FiniteChain([0.5, 1])


def test_fuzzy_derivations(fuzzy_small):
    ctx = fuzzy_small.context
    assert fuzzy_up(ctx, [0, 1, 0]) == (0, H, 0, H)
    assert fuzzy_down(ctx, [0, 0, 0, H]) == (0, 1, 1)
    assert fuzzy_down(ctx, fuzzy_up(ctx, [0, H, 0])) == (0, H, 0)


def test_fuzzy_crisp_agree():
    ctx = FormalContext.from_matrix(["a", "b"], ["x", "y", "z"], [[1, 1, 0], [0, 1, 1]])
    crisp = {frozenset(c.extent) for c in concepts(ctx).concepts}
    fz = fuzzy_concepts(FuzzyContext.from_crisp(ctx))
    fuzzy_ext = {frozenset(o for o, v in zip(ctx.objects, c.extent) if v == 1) for c in fz.concepts}
    assert crisp == fuzzy_ext


def test_fuzzy_json_round_trip(fuzzy_small):
    ctx = fuzzy_small.context
    back = fuzzy_from_dict(fuzzy_to_dict(ctx))
    assert back == ctx and back.concept_order == ctx.concept_order


def test_concept_table_shape(fuzzy_small):
    rows = fuzzy_small.table()
    assert [r["label"] for r in rows] == [f"C{i}" for i in range(8)]
    assert rows[2]["extent"] == [0, 0.5, 0]


def test_induced_relation_full_attribute_set(planets):
    rho = induced_relation(planets, planets.context.attributes)
    assert rho == Partition.identity(planets.lattice)


def _check_classes(cl, D):
    rho = induced_relation(cl, D)
    lat = cl.lattice
    for blk in rho.blocks:
        for a in blk:
            for b in blk:
                assert rho.same(a, lat.join[a][b])
        class_max(cl, blk, D)


def test_class_maximum_fixtures(planets, fuzzy_small):
    _check_classes(planets, ["ss", "ms", "ns", "my"])
    _check_classes(fuzzy_small, ["a1", "a2"])


@given(crisp_contexts(max_attrs=5, max_objs=5), st.data())
def test_class_maximum_random(ctx, data):
    D = data.draw(st.lists(st.sampled_from(ctx.attributes), min_size=1, unique=True))
    _check_classes(concept_lattice(ctx), D)


def _refines_for_supersets(cl):
    attrs = cl.context.attributes
    subsets = [D for r in range(1, len(attrs) + 1) for D in combinations(attrs, r)]
    rho = {D: induced_relation(cl, D) for D in subsets}
    return all(refines(rho[E], rho[D]) for D in subsets for E in subsets if set(D) <= set(E))


def test_more_attributes_refine_fixtures(planets, fuzzy_small):
    assert _refines_for_supersets(planets)
    assert _refines_for_supersets(fuzzy_small)


@given(crisp_contexts(max_attrs=4, max_objs=5))
def test_more_attributes_refine_random(ctx):
    assert _refines_for_supersets(concept_lattice(ctx))
