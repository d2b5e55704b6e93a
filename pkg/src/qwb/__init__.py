"""Finite workbench for quantale-enriched categories, modules and their dualities."""
from .errors import CapExceeded, InvariantViolation, ParseError, QuantaleMismatch, QwbError, ShapeError
from .quantale import Quantale, by_name, make_boolean, make_chain
from .report import Report
from .suites import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "InvariantViolation", "ParseError", "QuantaleMismatch", "QwbError", "ShapeError",
    "Quantale", "by_name", "make_boolean", "make_chain", "Report", "SUITES", "run_suite",
]
