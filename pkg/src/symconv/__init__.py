"""Exact symmetric-function convolutions and the special numbers they specialize to."""

from .errors import ConsistencyError, UsageError
from .ring import MPoly, UPoly, eval_at_one, parse_mpoly, parse_upoly, substitute_variables
from .symfun import SymKind, complete, elementary

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "UsageError",
    "MPoly",
    "UPoly",
    "eval_at_one",
    "parse_mpoly",
    "parse_upoly",
    "substitute_variables",
    "SymKind",
    "complete",
    "elementary",
]
