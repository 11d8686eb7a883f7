"""Saturated set families of bounded VC dimension.

Thin Python surface over the C++ core: explicit constructions over [2d],
duplication-based extension to larger ground sets, exhaustive saturation and
almost-shattering verification, restricted sumsets, seeded pair sampling, and
the certified evaluation of the dimension-threshold inequality.
"""

from ._core import (
    AlmostShatterReport,
    ConditionReport,
    DuplicateClasses,
    IndeterminateError,
    InternalConsistencyError,
    LllEvaluation,
    MonteCarloReport,
    PreconditionError,
    ResidueSet,
    ResourceLimitError,
    SaturationReport,
    SetFamily,
    Subset,
    SumsetBoundReport,
    almost_shatters,
    build_saturated,
    builtin_family,
    check_even_conditions,
    check_odd_conditions,
    check_sumset_bound,
    cyclic_orbit_family,
    duplicate_classes,
    even_families,
    explicit_x_even,
    explicit_x_odd,
    extend_by_duplication,
    find_valid_x,
    greedy_saturate,
    is_duplication_safe,
    is_intersecting,
    is_saturated,
    lll_evaluate,
    min_saturated_size,
    modular_family,
    monte_carlo_search,
    parse_family,
    reduced_family,
    restricted_sumset,
    sample_pair_family,
    sauer_bound,
    serialize_family,
    shattered_sets,
    shatters,
    stream_value,
    trace,
    vc_dimension,
    verify_almost_shattering,
)

__all__ = [name for name in dir() if not name.startswith("_")]
