import os
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcon.catalog import lattice_catalog
from lcon.fca import concept_lattice, load_context
from lcon.lattice import load_lattice
from lcon.partitions import Partition, load_partition

DATA = files("lcon") / "data"

# reproducible by default; HYPOTHESIS_PROFILE=random for fresh examples
settings.register_profile("repro", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("random", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

SMALL = lattice_catalog(6)


@st.composite
def lattice_and_partition(draw, lattices=SMALL):
    lat = draw(st.sampled_from(lattices))
    keys = draw(st.lists(st.integers(0, lat.n - 1), min_size=lat.n, max_size=lat.n))
    return lat, Partition(lat, keys)


def load_pair(name, suffix):
    lat = load_lattice(DATA / f"{name}.json")
    return lat, load_partition(lat, DATA / f"{name}_{suffix}.json")


@pytest.fixture(scope="session")
def planets():
    return concept_lattice(load_context(DATA / "planets.cxt"))


@pytest.fixture(scope="session")
def fuzzy_small():
    return concept_lattice(load_context(DATA / "fuzzy_small.json"))


@pytest.fixture(scope="session")
def twisted():
    return load_pair("twisted", "delta")


@pytest.fixture(scope="session")
def nonlattice():
    return load_pair("nonlattice", "delta")


@pytest.fixture(scope="session")
def twostage():
    return load_pair("twostage", "rhoD")


def blocks(p):
    """Blocks as a set of frozensets of labels, for order-free comparison."""
    return {frozenset(b) for b in p.labelled_blocks()}
