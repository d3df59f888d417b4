"""pyfreediv: free divisors, linear type and saturation of gradient ideals over QQ."""
from .cli import run_cli, run_config
from .divisor import DivisorReport, analyze, gradient_ideal, is_free, jacobian_ideal
from .errors import (
    DegreeCapExceeded,
    FreeDivError,
    HypothesisError,
    InvariantViolation,
    PreconditionError,
)
from .options import AnalysisOptions
from .poly_core import format_poly, parse_poly, polynomial_ring

__all__ = [
    "AnalysisOptions",
    "DegreeCapExceeded",
    "DivisorReport",
    "FreeDivError",
    "HypothesisError",
    "InvariantViolation",
    "PreconditionError",
    "analyze",
    "format_poly",
    "gradient_ideal",
    "is_free",
    "jacobian_ideal",
    "parse_poly",
    "polynomial_ring",
    "run_cli",
    "run_config",
]
