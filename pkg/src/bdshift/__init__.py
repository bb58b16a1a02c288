"""Exact computations on bounded density shifts."""

from .core import (
    CanonicalFunction,
    ShiftSpec,
    ValidationReport,
    Word,
    as_word,
    build_x_alpha,
    canonicalize,
    check_containment,
    eval_f,
    golden_mean,
    hereditary_reduce,
    is_admissible,
    limiting_gradient,
    load_spec,
    shift,
    validate_canonical,
)
from .errors import BDSError, BudgetExceeded, InputError, NonCanonicalError

__version__ = "0.1.0"

__all__ = [
    "BDSError", "BudgetExceeded", "CanonicalFunction", "InputError", "NonCanonicalError",
    "ShiftSpec", "ValidationReport", "Word", "as_word", "build_x_alpha", "canonicalize",
    "check_containment", "eval_f", "golden_mean", "hereditary_reduce", "is_admissible",
    "limiting_gradient", "load_spec", "shift", "validate_canonical",
]
