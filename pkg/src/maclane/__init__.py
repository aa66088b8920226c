"""Exact low-degree Mac Lane cohomology of finite rings, Ann-category
structure data, functor obstructions, and the categorical-ring separation
example.

Everything is computed twice where it matters: linear-algebra results
(echelon/Smith reductions over the slot groups) are cross-checked against
direct enumeration or full defect evaluation.
"""

from .rings import (
    FiniteRing, FiniteBimodule, ShapeError,
    make_zn, make_dual_numbers, make_product, make_ring_from_tables,
    make_bimodule_via_hom, make_bimodule_from_tables,
    validate_ring, validate_bimodule,
)
from .cochains import (
    Violation, BudgetError,
    Cochain1, Cochain2, MacLane3Cochain, AnnStructure,
    d1, d2, structure_coboundary, random_cochain,
    is_cocycle3, is_structure, structure_to_cocycle, cocycle_to_structure,
    inner_derivation, is_regular, cohomologous_structures,
    enumerate_structures,
)
from .engine import (
    CohomologyResult, cohomology,
    is_coboundary2, is_coboundary3, solve_structure_shift,
    enumerate_structures_kernel, enumerate_structures_bruteforce,
    matrix_of_d1, matrix_of_d2, matrix_of_structure_shift,
    matrix_of_z3_constraints,
)
from .functors import (
    DifferentTypeError, HomPair, FunctorTriple, ObstructionReport,
    restrict_bimodule, identity_pair, pushforward, pullback,
    obstruction, check_functor, homotopic,
    count_hom_classes_bruteforce, prestick_invariant,
)
from .catring import (
    LeftDistLambda, check_R1_R5, appendix_lambda, is_ann_normalized,
    counterexample_report,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "FiniteRing", "FiniteBimodule", "ShapeError",
    "make_zn", "make_dual_numbers", "make_product", "make_ring_from_tables",
    "make_bimodule_via_hom", "make_bimodule_from_tables",
    "validate_ring", "validate_bimodule",
    "Violation", "BudgetError",
    "Cochain1", "Cochain2", "MacLane3Cochain", "AnnStructure",
    "d1", "d2", "structure_coboundary", "random_cochain",
    "is_cocycle3", "is_structure", "structure_to_cocycle",
    "cocycle_to_structure", "inner_derivation", "is_regular",
    "cohomologous_structures", "enumerate_structures",
    "CohomologyResult", "cohomology",
    "is_coboundary2", "is_coboundary3", "solve_structure_shift",
    "enumerate_structures_kernel", "enumerate_structures_bruteforce",
    "matrix_of_d1", "matrix_of_d2", "matrix_of_structure_shift",
    "matrix_of_z3_constraints",
    "DifferentTypeError", "HomPair", "FunctorTriple", "ObstructionReport",
    "restrict_bimodule", "identity_pair", "pushforward", "pullback",
    "obstruction", "check_functor", "homotopic",
    "count_hom_classes_bruteforce", "prestick_invariant",
    "LeftDistLambda", "check_R1_R5", "appendix_lambda", "is_ann_normalized",
    "counterexample_report",
    "BACKEND", "__version__",
]
