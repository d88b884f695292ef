"""Screening restricted modules of simple Lie algebras in positive characteristic.

The package builds root systems, counts Weyl orbits, walks the dominant
weights below a highest weight, and bounds two orbit sums that every
exceptional module must keep small. A sweep classifies each restricted
weight of a (type, p) grid and reconciles the result with transcribed
classification tables.
"""

from .errors import (
    ConstructionError,
    ExceptaError,
    IntegrityError,
    OverflowCapError,
    PrimeError,
    SpecialPrimeError,
)
from .reference import ReferenceTables, default_tables, load_tables
from .rootsystem import (
    DynkinType,
    RootSystem,
    bad_primes,
    build,
    cartan_matrix,
    center_dim,
    diagram_automorphisms,
    dim_g,
    graph_twist,
    inner_product,
    is_bad_prime,
    is_special_prime,
    is_very_good_prime,
)
from .screening import (
    Kind,
    Reason,
    ScreeningResult,
    Verdict,
    brute_force_M,
    classify_weight,
    dimension_criterion,
    is_adjoint_weight,
    limit,
    screen,
    table_M,
)
from .sweep import SweepReport, emit, load_report, reconcile, sweep_restricted
from .weights import (
    DominantSet,
    MultiplicityHints,
    dominant_below,
    is_bad_weight,
    long_complement_count,
    steinberg_dimension,
    truncated_power_data,
    weyl_dimension,
)
from .weyl import centralizer_order, decompose_deleted_diagram, orbit_enumerate, orbit_size, weyl_order

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "DominantSet",
    "DynkinType",
    "ExceptaError",
    "IntegrityError",
    "Kind",
    "MultiplicityHints",
    "OverflowCapError",
    "PrimeError",
    "Reason",
    "ReferenceTables",
    "RootSystem",
    "ScreeningResult",
    "SpecialPrimeError",
    "SweepReport",
    "Verdict",
    "bad_primes",
    "brute_force_M",
    "build",
    "cartan_matrix",
    "center_dim",
    "centralizer_order",
    "classify_weight",
    "decompose_deleted_diagram",
    "default_tables",
    "diagram_automorphisms",
    "dim_g",
    "dimension_criterion",
    "dominant_below",
    "emit",
    "graph_twist",
    "inner_product",
    "is_adjoint_weight",
    "is_bad_prime",
    "is_bad_weight",
    "is_special_prime",
    "is_very_good_prime",
    "limit",
    "load_report",
    "load_tables",
    "long_complement_count",
    "orbit_enumerate",
    "orbit_size",
    "reconcile",
    "screen",
    "steinberg_dimension",
    "sweep_restricted",
    "table_M",
    "truncated_power_data",
    "weyl_dimension",
    "weyl_order",
]
