"""Right modular groupoids, crisp ideals and (∈,∈∨q_k)-fuzzy ideals on finite carriers."""

__version__ = "0.1.0"

from .crisp import CrispKind, enumerate_crisp, is_crisp
from .enumeration import (
    EnumerationConstraints,
    all_magmas,
    canonicalize,
    enumerate_fuzzy,
    enumerate_groupoids,
    enumerate_homs,
    fuzzy_grid,
    is_isomorphic,
    right_modular_groupoids,
    sample_fuzzy,
)
from .errors import CapacityError, InputError
from .fuzzy import (
    FuzzyPoint,
    FuzzySubset,
    GroupoidHom,
    convolve,
    format_fraction,
    format_fuzzy,
    hom_transport,
    k_convolve,
    k_meet,
    k_truncate,
    level_set,
    meet,
    parse_fraction,
    parse_fuzzy,
    point_relation,
    pointwise,
    theta,
)
from .groupoid import (
    LAWS,
    CayleyTable,
    ElementSubset,
    RegularityProfile,
    Verdict,
    check_law,
    compose,
    example_table,
    format_subset,
    format_table,
    left_identities,
    parse_subset,
    parse_table,
    parse_tables,
    regularity,
    subset_product,
)
from .ideals import FuzzyKind, Violation, is_fuzzy_quantified, is_fuzzy_threshold
from .lab import Scope, TheoremReport, TheoremResult, run_suite, search_counterexamples, theorem_ids, verify_theorem
