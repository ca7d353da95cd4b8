"""Concept lattice reduction by local congruences."""

from .lattice import (FiniteLattice, NotALattice, NotComparable, Quadrilateral, chain, diamond,
                      from_order, interval, lattice_from_dict, lattice_to_dict, load_lattice,
                      m3, pentagon, quadrilaterals, validate)
from .partitions import (Partition, compatibility_check, is_congruence, is_local_congruence,
                         is_quadrilateral_closed, load_partition, local_compatibility_check,
                         meet, quadrilateral_violation, refines)
from .closure import (ClosureTrace, enumerate_congruences, enumerate_local_congruences,
                      join_of_partitions, least_congruence, least_local_congruence,
                      principal_congruence, principal_local_congruence)
from .quotient import (CyclesNotClosed, NotLocalCongruence, all_cycles_closed, class_preorder,
                       find_delta_sequence, is_quotient_lattice, missing_bound, open_cycle,
                       quotient_poset, rho_delta)
from .fca import (FiniteChain, FormalContext, FuzzyContext, concept_lattice, concepts,
                  fuzzy_concepts, induced_relation, load_context, read_cxt)
from .reduce import ReductionReport, compare_with_congruence, reduce, reduce_partition

__version__ = "0.1.0"
