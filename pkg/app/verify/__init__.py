from .cross_check import CrossCheckReport, cross_check
from .error_system import (
    ErrorSystem,
    error_rate_first_order,
    error_rate_from_state_rate,
    error_rate_second_order,
    error_state,
    f1_matrix,
    f1_spectrum,
    quadratic_roots,
    reduced_channels,
    reduced_vector_field,
)
from .linear import affine_error_solution, h_weighted_norm, iss_decay_holds, linear_error_solution

__all__ = [
    "CrossCheckReport",
    "ErrorSystem",
    "affine_error_solution",
    "cross_check",
    "error_rate_first_order",
    "error_rate_from_state_rate",
    "error_rate_second_order",
    "error_state",
    "f1_matrix",
    "f1_spectrum",
    "h_weighted_norm",
    "iss_decay_holds",
    "linear_error_solution",
    "quadratic_roots",
    "reduced_channels",
    "reduced_vector_field",
]
