"""Deflation of quantum stabilizer codes in the symplectic F_p-linear picture."""

from .classical import LinearCode, classical_dimension, deflate_classical, min_distance_classical
from .counting import count_punc_short, count_stabilizers, enumerate_prefix_codes
from .deflate import (
    DeflationReport,
    deflate,
    dual_commutation_check,
    puncture,
    shorten,
    theorem_bounds,
)
from .errors import BudgetExceeded, DimensionError, IsotropyError, QDeflateError, UndefinedDistance
from .gf import FieldParams, make_field
from .search import build_m_sets, improvement_criterion, search_deflations
from .stabfile import parse_stab, serialize_stab
from .stabilizer import (
    CodeParameters,
    StabilizerCode,
    extended_matrix,
    is_pure,
    min_distance,
    new_stabilizer,
)
from .symplectic import SympSubspace, SympVector, symp_dual, symp_product, symp_weight

__all__ = [
    "BudgetExceeded",
    "CodeParameters",
    "DeflationReport",
    "DimensionError",
    "FieldParams",
    "IsotropyError",
    "LinearCode",
    "QDeflateError",
    "StabilizerCode",
    "SympSubspace",
    "SympVector",
    "UndefinedDistance",
    "build_m_sets",
    "classical_dimension",
    "count_punc_short",
    "count_stabilizers",
    "deflate",
    "deflate_classical",
    "dual_commutation_check",
    "enumerate_prefix_codes",
    "extended_matrix",
    "improvement_criterion",
    "is_pure",
    "make_field",
    "min_distance",
    "min_distance_classical",
    "new_stabilizer",
    "parse_stab",
    "puncture",
    "search_deflations",
    "serialize_stab",
    "shorten",
    "symp_dual",
    "symp_product",
    "symp_weight",
    "theorem_bounds",
]
