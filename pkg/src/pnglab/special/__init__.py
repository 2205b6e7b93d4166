"""Airy functions, Painleve II, Fredholm determinants and Tracy-Widom laws."""

from .airy import AiryAccuracyWarning, airy_ai, airy_ai_prime
from .fredholm import fredholm_det
from .kernels import (KernelSpec, airy_kernel, extended_airy_kernel, goe_kernel_entry)
from .painleve import PainleveError, PainleveSolution, painleve2_solve
from .quadrature import QuadratureError
from .tracy_widom import DistTable, table_moments, tw_cdf, tw_table

__all__ = [
    "AiryAccuracyWarning", "airy_ai", "airy_ai_prime", "fredholm_det", "KernelSpec",
    "airy_kernel", "extended_airy_kernel", "goe_kernel_entry", "PainleveError",
    "PainleveSolution", "painleve2_solve", "QuadratureError", "DistTable",
    "table_moments", "tw_cdf", "tw_table",
]
