"""Symmetric bilinear multiplication algorithms over finite fields and tower-based rank bounds."""
from .audit import AuditReport, audit
from .cc_builder import (
    EvaluationPlan,
    SymmetricBilinearAlgorithm,
    base_algorithm,
    build_algorithm,
    check_conditions,
    multiply_with,
    predicted_rank,
    select_plan,
    verify_algorithm,
    verify_base,
)
from .errors import BilinrankError
from .ff_core import FieldSpec, Polynomial, field_of_order, make_field, prime_field
from .function_field import Divisor, Place, local_expansion, riemann_roch_basis
from .serialize import export_algorithm, import_algorithm, import_known_values
from .tower_bounds import pointwise_bound, select_step, step, uniform_slope

__all__ = [
    "AuditReport", "audit", "EvaluationPlan", "SymmetricBilinearAlgorithm", "base_algorithm",
    "build_algorithm", "check_conditions", "multiply_with", "predicted_rank", "select_plan",
    "verify_algorithm", "verify_base", "BilinrankError", "FieldSpec", "Polynomial",
    "field_of_order", "make_field", "prime_field", "Divisor", "Place", "local_expansion",
    "riemann_roch_basis", "export_algorithm", "import_algorithm", "import_known_values",
    "pointwise_bound", "select_step", "step", "uniform_slope",
]
