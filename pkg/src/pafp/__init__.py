"""Solvers, reductions and hardness gadgets for the path-avoiding-forbidden-pairs
problem on topologically sorted DAGs."""

__version__ = "0.1.0"

from .classify import (
    Classification,
    PairRelation,
    SplitResult,
    StructureClass,
    classify_instance,
    relate,
    split_shared_vertices,
)
from .core import (
    Formula3Sat,
    Instance,
    Path,
    PruneResult,
    SolveResult,
    SolveStats,
    reachability_prune,
    validate,
    verify_safe,
)
from .dp_solvers import (
    DpTables,
    INFINITE_VIOLATIONS,
    ViolationTables,
    brute_force_solve,
    build_dp_tables,
    reconstruct_safe_path,
    solve_auto,
    solve_by_rules,
    solve_disjoint,
    solve_halving,
    solve_min_violations,
    solve_well_parenthesized,
)
from .matrix_solver import InsideProperties, bool_matmul, matrix_build, matrix_build_full
from .reductions import (
    BlockDescriptor,
    OrderedAnnotation,
    OverlappingAnnotation,
    gen_random,
    reduce_halving_to_nested,
    sat3_to_ordered,
    sat3_to_overlapping,
    zip_blocks,
)
from .textio import parse_dimacs, parse_instance, serialize_instance

__all__ = [
    "__version__",
    "Classification",
    "PairRelation",
    "SplitResult",
    "StructureClass",
    "classify_instance",
    "relate",
    "split_shared_vertices",
    "Formula3Sat",
    "Instance",
    "Path",
    "PruneResult",
    "SolveResult",
    "SolveStats",
    "reachability_prune",
    "validate",
    "verify_safe",
    "DpTables",
    "INFINITE_VIOLATIONS",
    "ViolationTables",
    "brute_force_solve",
    "build_dp_tables",
    "reconstruct_safe_path",
    "solve_auto",
    "solve_by_rules",
    "solve_disjoint",
    "solve_halving",
    "solve_min_violations",
    "solve_well_parenthesized",
    "InsideProperties",
    "bool_matmul",
    "matrix_build",
    "matrix_build_full",
    "BlockDescriptor",
    "OrderedAnnotation",
    "OverlappingAnnotation",
    "gen_random",
    "reduce_halving_to_nested",
    "sat3_to_ordered",
    "sat3_to_overlapping",
    "zip_blocks",
    "parse_dimacs",
    "parse_instance",
    "serialize_instance",
]
