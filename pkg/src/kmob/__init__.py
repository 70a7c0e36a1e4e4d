"""Möbius inversion expansions of K-homology classes of reduced unions."""

from .bruhat import (
    ParabolicQuotient, SchubertUniverse, bruhat_leq, format_permutation, length,
    minimal_coset_reps, parse_permutation, schubert_universe,
)
from .kclass import (
    KClassExpansion, closure_support, enumerate_antichains, inclusion_exclusion_kclass,
    mobius_kclass, normalize_components, verify_expansion,
)
from .poset import (
    FinitePoset, PosetError, build_poset, extend_by_zero, greatest_lower_bounds,
    is_glb_closed, mobius, order_ideal, unique_min_above, upper_set,
)
from .universe import (
    ClosureError, CoordinateUniverse, TableUniverse, UniverseError, VarietyUniverse,
    antichain_meet, check_subset_closure, intersect_decompose_closure, validate_table,
)

__version__ = "0.1.0"
