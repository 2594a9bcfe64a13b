"""Equilateral triangles with vertices on the integer lattice Z^3.

Construction (twelve-coefficient tables per plane family), inversion back to
index space, exact counting over the cubes {0..n}^3, OEIS b-file tooling for
A102698, and growth analysis of the resulting sequence.
"""

from trilattice.diophantine import (
    DegeneracyInfo,
    RsPair,
    Triple,
    degeneracy,
    degenerate_triples,
    enumerate_triples,
    iter_rs,
    smallest_degenerate_d,
    solve_rs,
)
from trilattice.parametrization import (
    DegenerateIndex,
    LatticeTriangle,
    MnIndex,
    NonIntegralParametrization,
    OffPlane,
    ParamPair,
    build_params,
    canonical_params,
    equivalent_parametrizations,
    hexagonal_orbit,
    solve_mn,
    third_vertex_check,
    triangle_at,
)
from trilattice.counting import (
    CountRecord,
    TriangleClass,
    classes_with_placements,
    count_range,
    fast_count,
    oracle_count,
    oracle_triangles,
    records_from_csv,
    records_to_bfile,
    records_to_csv,
)
from trilattice.oeis import (
    A102698_ID,
    BFile,
    ComparisonReport,
    compare,
    emit_bfile,
    fetch_bfile,
    fixture_bfile,
    parse_bfile,
)
from trilattice.analysis import (
    FitError,
    GrowthSample,
    MonotonicityReport,
    PowerFit,
    SqrtRationalFit,
    emit_plot_data,
    finite_difference,
    fit_g_three_points,
    fit_power,
    growth_sequence,
    mean_abs_deviation,
    monotonicity_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # diophantine
    "Triple", "DegeneracyInfo", "RsPair",
    "enumerate_triples", "degeneracy", "degenerate_triples",
    "solve_rs", "iter_rs", "smallest_degenerate_d",
    # parametrization
    "ParamPair", "LatticeTriangle", "MnIndex",
    "NonIntegralParametrization", "DegenerateIndex", "OffPlane",
    "build_params", "canonical_params", "triangle_at", "solve_mn",
    "hexagonal_orbit", "equivalent_parametrizations", "third_vertex_check",
    # counting
    "CountRecord", "TriangleClass",
    "oracle_count", "oracle_triangles", "fast_count", "count_range",
    "classes_with_placements",
    "records_to_csv", "records_from_csv", "records_to_bfile",
    # oeis
    "BFile", "ComparisonReport", "A102698_ID",
    "parse_bfile", "emit_bfile", "compare", "fetch_bfile", "fixture_bfile",
    # analysis
    "GrowthSample", "SqrtRationalFit", "PowerFit", "MonotonicityReport", "FitError",
    "growth_sequence", "fit_g_three_points", "mean_abs_deviation",
    "finite_difference", "fit_power", "monotonicity_report", "emit_plot_data",
]
