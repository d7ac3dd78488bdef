"""Exact arithmetic for the rational orbits of three twisted prehomogeneous
vector spaces: pairs of binary Hermitian forms, the twisted D4 space over a
cubic extension, and pairs of ternary Hermitian forms."""
from .algebra import EtaleAlgebra, finite_field, make_extension, tensor_extend, with_frobenius
from .errors import BudgetExceeded, CheckFailure, PVError, ValidationError
from .fields import QQ, BaseField
from .forms import BinaryForm, ErLabel, binary_form_disc, is_norm_quadratic_rational, splitting_label

__version__ = "0.1.0"

__all__ = [
    "BaseField", "BinaryForm", "BudgetExceeded", "CheckFailure", "ErLabel", "EtaleAlgebra", "PVError",
    "QQ", "ValidationError", "binary_form_disc", "finite_field", "is_norm_quadratic_rational",
    "make_extension", "splitting_label", "tensor_extend", "with_frobenius",
]
