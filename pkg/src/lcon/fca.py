"""Formal contexts, derivation operators and concept lattices.

Crisp contexts keep the incidence as bitmasks (one mask of objects per
attribute).  Fuzzy contexts grade the incidence on a finite chain and use the
Gödel adjoint pair: conjunction ``min`` and residuum ``x -> y = 1 if x <= y
else y``.  Grades are handled as chain indices, which is exact because the
Gödel operations only compare grades.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .lattice import FiniteLattice, _bits, from_order
from .partitions import Partition


class UnknownObject(KeyError):
    pass


class UnknownAttribute(KeyError):
    pass


class GradeNotInChain(ValueError):
    pass


class EmptyAttributeSet(ValueError):
    pass


class NotInducedClass(ValueError):
    pass


class ParseError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _lookup(labels: Sequence[str], items: Iterable, err) -> list[int]:
    pos = {x: i for i, x in enumerate(labels)}
    out = []
    for x in items:
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < len(labels):
                raise err(x)
            out.append(x)
        elif x in pos:
            out.append(pos[x])
        else:
            raise err(x)
    return out


# -- crisp contexts ---------------------------------------------------------

@dataclass(frozen=True)
class FormalContext:
    """Crisp context (A, B, R); ``rows[a]`` is the mask of objects with attribute a."""

    attributes: tuple[str, ...]
    objects: tuple[str, ...]
    rows: tuple[int, ...]

    @classmethod
    def from_matrix(cls, attributes, objects, R) -> "FormalContext":
        """``R`` is attribute-major: ``R[a][b]`` in {0, 1}."""
        attributes, objects = tuple(map(str, attributes)), tuple(map(str, objects))
        if len(R) != len(attributes) or any(len(r) != len(objects) for r in R):
            raise ValueError("incidence shape does not match labels")
        rows = []
        for r in R:
            if any(v not in (0, 1, True, False) for v in r):
                raise ValueError("crisp incidence must be 0/1")
            rows.append(sum(1 << b for b, v in enumerate(r) if v))
        return cls(attributes, objects, tuple(rows))

    @property
    def all_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes(self) -> int:
        return (1 << len(self.attributes)) - 1

    def incidence(self, a: int, b: int) -> int:
        return self.rows[a] >> b & 1

    def matrix(self) -> list[list[int]]:
        return [[self.incidence(a, b) for b in range(len(self.objects))] for a in range(len(self.attributes))]

    def up_mask(self, X: int, D: Optional[int] = None) -> int:
        """Attributes (within D, default all) shared by every object in X."""
        out = 0
        for a in _bits(self.all_attributes if D is None else D):
            if self.rows[a] & X == X:
                out |= 1 << a
        return out

    def down_mask(self, Y: int) -> int:
        out = self.all_objects
        for a in _bits(Y):
            out &= self.rows[a]
        return out

    def object_mask(self, X: Iterable) -> int:
        return sum(1 << i for i in _lookup(self.objects, X, UnknownObject))

    def attribute_mask(self, Y: Iterable) -> int:
        return sum(1 << i for i in _lookup(self.attributes, Y, UnknownAttribute))


def up(ctx: FormalContext, X: Iterable) -> frozenset[str]:
    """Attributes shared by all objects of X (all attributes for X = ∅)."""
    m = ctx.up_mask(ctx.object_mask(X))
    return frozenset(ctx.attributes[a] for a in _bits(m))


def down(ctx: FormalContext, Y: Iterable) -> frozenset[str]:
    """Objects having every attribute of Y."""
    m = ctx.down_mask(ctx.attribute_mask(Y))
    return frozenset(ctx.objects[b] for b in _bits(m))


# -- finite chains and fuzzy contexts ---------------------------------------

def _grade(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


@dataclass(frozen=True)
class FiniteChain:
    grades: tuple[Fraction, ...]

    def __init__(self, grades: Iterable):
        gs = tuple(sorted({_grade(g) for g in grades}))
        if not gs or gs[0] != 0 or gs[-1] != 1:
            raise ValueError("chain must contain 0 and 1")
        object.__setattr__(self, "grades", gs)

    @property
    def k(self) -> int:
        return len(self.grades)

    @property
    def top(self) -> int:
        return len(self.grades) - 1

    def index(self, v) -> int:
        try:
            return self.grades.index(_grade(v))
        except (ValueError, TypeError):
            raise GradeNotInChain(v) from None

    def value(self, i: int) -> Fraction:
        return self.grades[i]


def residuum(chain: FiniteChain, x, y) -> Fraction:
    """Gödel implication x -> y on the chain: 1 if x <= y, else y."""
    i, j = chain.index(x), chain.index(y)
    return chain.value(chain.top if i <= j else j)


@dataclass(frozen=True)
class FuzzyContext:
    """Fuzzy context graded on a finite chain with the Gödel pair fixed."""

    attributes: tuple[str, ...]
    objects: tuple[str, ...]
    chain: FiniteChain
    R: tuple[tuple[int, ...], ...]   # chain indices, attribute-major
    conjunctor: str = field(default="godel")
    # optional preferred numbering of concepts, as extents in grade indices
    concept_order: tuple = field(default=(), compare=False)

    @classmethod
    def from_matrix(cls, attributes, objects, chain, R) -> "FuzzyContext":
        if not isinstance(chain, FiniteChain):
            chain = FiniteChain(chain)
        attributes, objects = tuple(map(str, attributes)), tuple(map(str, objects))
        if len(R) != len(attributes) or any(len(r) != len(objects) for r in R):
            raise ValueError("incidence shape does not match labels")
        idx = tuple(tuple(chain.index(v) for v in r) for r in R)
        return cls(attributes, objects, chain, idx)

    @classmethod
    def from_crisp(cls, ctx: FormalContext) -> "FuzzyContext":
        return cls.from_matrix(ctx.attributes, ctx.objects, [0, 1], ctx.matrix())

    def _imp(self, x: int, y: int) -> int:
        return self.chain.top if x <= y else y

    def up_idx(self, g: Sequence[int], D: Optional[Sequence[int]] = None) -> tuple[int, ...]:
        """Intent grades; attributes outside D (when given) are omitted."""
        attrs = range(len(self.attributes)) if D is None else D
        return tuple(
            min((self._imp(g[b], self.R[a][b]) for b in range(len(self.objects))), default=self.chain.top)
            for a in attrs
        )

    def down_idx(self, f: Sequence[int], D: Optional[Sequence[int]] = None) -> tuple[int, ...]:
        attrs = list(range(len(self.attributes)) if D is None else D)
        return tuple(
            min((self._imp(f[i], self.R[a][b]) for i, a in enumerate(attrs)), default=self.chain.top)
            for b in range(len(self.objects))
        )

    def closure_idx(self, g: Sequence[int], D: Optional[Sequence[int]] = None) -> tuple[int, ...]:
        return self.down_idx(self.up_idx(g, D), D)


def _grades_in(ctx: FuzzyContext, values: Sequence, n: int) -> tuple[int, ...]:
    if len(values) != n:
        raise ValueError(f"expected {n} grades, got {len(values)}")
    return tuple(ctx.chain.index(v) for v in values)


def fuzzy_up(ctx: FuzzyContext, g: Sequence) -> tuple[Fraction, ...]:
    """g↑(a) = min over objects b of (g(b) -> R(a, b))."""
    gi = _grades_in(ctx, g, len(ctx.objects))
    return tuple(ctx.chain.value(i) for i in ctx.up_idx(gi))


def fuzzy_down(ctx: FuzzyContext, f: Sequence) -> tuple[Fraction, ...]:
    """f↓(b) = min over attributes a of (f(a) -> R(a, b))."""
    fi = _grades_in(ctx, f, len(ctx.attributes))
    return tuple(ctx.chain.value(i) for i in ctx.down_idx(fi))


# -- concepts ---------------------------------------------------------------

@dataclass(frozen=True)
class Concept:
    extent: Union[frozenset, tuple]
    intent: Union[frozenset, tuple]


@dataclass
class ConceptLattice:
    context: Union[FormalContext, FuzzyContext]
    concepts: list[Concept]
    lattice: FiniteLattice
    keys: list  # extent masks (crisp) or grade-index tuples (fuzzy)

    @property
    def fuzzy(self) -> bool:
        return isinstance(self.context, FuzzyContext)

    def __len__(self) -> int:
        return len(self.concepts)

    def index_of_extent(self, extent) -> int:
        if self.fuzzy:
            key = tuple(self.context.chain.index(v) for v in extent)
        else:
            key = self.context.object_mask(extent)
        try:
            return self.keys.index(key)
        except ValueError:
            raise KeyError(f"no concept with extent {extent!r}") from None

    def table(self) -> list[dict]:
        """Rows (index, extent, intent) in the shape of a printed concept table."""
        rows = []
        for i, c in enumerate(self.concepts):
            if self.fuzzy:
                ext = [_num(v) for v in c.extent]
                inte = [_num(v) for v in c.intent]
            else:
                ext, inte = sorted(c.extent, key=self.context.objects.index), sorted(
                    c.intent, key=self.context.attributes.index
                )
            rows.append({"index": i, "label": self.lattice.labels[i], "extent": ext, "intent": inte})
        return rows


def _num(v: Fraction):
    if v.denominator == 1:
        return int(v)
    f = float(v)
    return f if Fraction(str(f)) == v else str(v)


def _build(ctx, keys, leq, make_concept, prefix="C") -> ConceptLattice:
    labels = [f"{prefix}{i}" for i in range(len(keys))]
    pairs = [(i, j) for i in range(len(keys)) for j in range(len(keys)) if i != j and leq(keys[i], keys[j])]
    lat = from_order(labels, pairs)
    return ConceptLattice(ctx, [make_concept(k) for k in keys], lat, list(keys))


def closed_extents_bruteforce(ctx: FormalContext) -> list[int]:
    """Every closed extent, found by closing all 2^|B| object sets."""
    seen = {ctx.down_mask(ctx.up_mask(X)) for X in range(1 << len(ctx.objects))}
    return sorted(seen, key=lambda m: (_popcount(m), _bits(m)))


def closed_extents_next_closure(ctx: FormalContext) -> list[int]:
    """Closed extents in lectic order (Ganter's NextClosure); bit i is object i."""
    n = len(ctx.objects)
    full = ctx.all_objects

    def close(X):
        return ctx.down_mask(ctx.up_mask(X))

    A = close(0)
    out = [A]
    while A != full:
        for i in reversed(range(n)):
            bit = 1 << i
            if A & bit:
                continue
            low = A & (bit - 1)
            B = close(low | bit)
            if B & (bit - 1) == low:
                A = B
                break
        out.append(A)
    return out


def concepts(ctx: FormalContext, method: str = "bruteforce") -> ConceptLattice:
    """Concept lattice of a crisp context ordered by extent inclusion."""
    if not ctx.objects or not ctx.attributes:
        raise ValueError("context needs objects and attributes")
    if method == "bruteforce":
        keys = closed_extents_bruteforce(ctx)
    elif method == "nextclosure":
        keys = sorted(closed_extents_next_closure(ctx), key=lambda m: (_popcount(m), _bits(m)))
    else:
        raise ValueError(f"unknown method {method!r}")

    def make(X):
        Y = ctx.up_mask(X)
        return Concept(
            frozenset(ctx.objects[b] for b in _bits(X)),
            frozenset(ctx.attributes[a] for a in _bits(Y)),
        )

    return _build(ctx, keys, lambda x, y: x & y == x, make)


def fuzzy_concepts(ctx: FuzzyContext) -> ConceptLattice:
    """All fuzzy concepts <g, f> by closing every |chain|^|B| extent candidate."""
    k = ctx.chain.k
    seen = {ctx.closure_idx(g) for g in product(range(k), repeat=len(ctx.objects))}
    keys = sorted(seen, key=lambda g: (sum(g), g))
    if ctx.concept_order:
        pos = {g: i for i, g in enumerate(ctx.concept_order)}
        keys.sort(key=lambda g: pos.get(g, len(pos)))
    val = ctx.chain.value

    def make(g):
        return Concept(tuple(val(i) for i in g), tuple(val(i) for i in ctx.up_idx(g)))

    return _build(ctx, keys, lambda x, y: all(a <= b for a, b in zip(x, y)), make)


def concept_lattice(ctx) -> ConceptLattice:
    return fuzzy_concepts(ctx) if isinstance(ctx, FuzzyContext) else concepts(ctx)


# -- relation induced by an attribute subset --------------------------------

def _d_indices(ctx, D: Iterable) -> list[int]:
    idx = sorted(set(_lookup(ctx.attributes, D, UnknownAttribute)))
    if not idx:
        raise EmptyAttributeSet("attribute subset D is empty")
    return idx


def reduced_closure(cl: ConceptLattice, i: int, D: Iterable):
    """Key of X^{↑D↓} for the extent X of concept i."""
    ctx = cl.context
    d = _d_indices(ctx, D)
    if cl.fuzzy:
        return ctx.closure_idx(cl.keys[i], d)
    dmask = sum(1 << a for a in d)
    return ctx.down_mask(ctx.up_mask(cl.keys[i], dmask))


def induced_relation(cl: ConceptLattice, D: Iterable) -> Partition:
    """Partition of the concepts by their extents' closure through D."""
    D = list(D)
    return Partition(cl.lattice, [reduced_closure(cl, i, D) for i in range(len(cl))])


def class_max(cl: ConceptLattice, block: Iterable[int], D: Optional[Iterable] = None) -> int:
    """Greatest concept of a class; with D, also check it is (X^{↑D↓}, X^{↑D↓↑})."""
    block = list(block)
    lat = cl.lattice
    tops = [m for m in block if all(lat.leq(x, m) for x in block)]
    if not tops:
        raise NotInducedClass(f"class {[lat.labels[x] for x in block]} has no maximum")
    m = tops[0]
    if D is not None:
        D = list(D)
        expected = reduced_closure(cl, block[0], D)
        if cl.keys[m] != expected or any(reduced_closure(cl, x, D) != expected for x in block):
            raise NotInducedClass("class maximum differs from the reduced closure of its extents")
    return m


# -- file formats -----------------------------------------------------------

def read_cxt(text: str) -> FormalContext:
    """Parse a Burmeister ``.cxt`` context."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise ParseError("missing 'B' header")
    i = 1
    counts = []
    while len(counts) < 2:
        if i >= len(lines):
            raise ParseError("missing object/attribute counts")
        s = lines[i].strip()
        i += 1
        if s.isdigit():
            counts.append(int(s))
        elif counts:
            raise ParseError(f"expected attribute count, got {s!r}")
        elif i > 3:
            raise ParseError("malformed header")
    n_obj, n_att = counts
    while i < len(lines) and not lines[i].strip():
        i += 1
    body = lines[i:]
    if len(body) < n_obj + n_att + n_obj:
        raise ParseError("truncated .cxt body")
    objects = [s.strip() for s in body[:n_obj]]
    attributes = [s.strip() for s in body[n_obj:n_obj + n_att]]
    rows = [s.strip() for s in body[n_obj + n_att:] if s.strip()]
    if len(rows) != n_obj:
        raise ParseError(f"expected {n_obj} incidence rows, got {len(rows)}")
    R = [[0] * n_obj for _ in range(n_att)]
    for b, row in enumerate(rows):
        if len(row) != n_att or set(row) - set("Xx."):
            raise ParseError(f"bad incidence row {row!r}")
        for a, ch in enumerate(row):
            R[a][b] = int(ch in "Xx")
    return FormalContext.from_matrix(attributes, objects, R)


def write_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    out += list(ctx.objects) + list(ctx.attributes)
    for b in range(len(ctx.objects)):
        out.append("".join("X" if ctx.incidence(a, b) else "." for a in range(len(ctx.attributes))))
    return "\n".join(out) + "\n"


def fuzzy_to_dict(ctx: FuzzyContext) -> dict:
    out = {
        "chain": [_num(g) for g in ctx.chain.grades],
        "attributes": list(ctx.attributes),
        "objects": list(ctx.objects),
        "R": [[_num(ctx.chain.value(v)) for v in row] for row in ctx.R],
    }
    if ctx.concept_order:
        out["concept_order"] = [[_num(ctx.chain.value(v)) for v in g] for g in ctx.concept_order]
    return out


def fuzzy_from_dict(data: dict) -> FuzzyContext:
    try:
        chain = FiniteChain(_grade(g) if not isinstance(g, str) else Fraction(g) for g in data["chain"])
        R = [[Fraction(v) if isinstance(v, str) else v for v in row] for row in data["R"]]
        ctx = FuzzyContext.from_matrix(data["attributes"], data["objects"], chain, R)
        order = data.get("concept_order") or []
        if order:
            idx = tuple(tuple(chain.index(Fraction(v) if isinstance(v, str) else v) for v in g) for g in order)
            ctx = replace(ctx, concept_order=idx)
        return ctx
    except KeyError as e:
        raise ParseError(f"missing key {e}") from None


def load_context(path) -> Union[FormalContext, FuzzyContext]:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".cxt":
        return read_cxt(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(e)) from None
    if "chain" in data:
        return fuzzy_from_dict(data)
    raise ParseError("JSON file is not a fuzzy context")
