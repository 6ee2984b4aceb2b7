"""Verification of tight answer set programs against first-order
specifications by way of the program completion."""
from __future__ import annotations

from .analysis import AnalysisError, analyze, is_tight, uses_private_recursion
from .completion import build_obligations, comp, completed_definition, completion_listing, universal_completion
from .ioprogram import IOProgram, IOProgramError
from .logic import Sort, alpha_equivalent, format_formula
from .simplify import normalize_names, simplify
from .speclang import Specification, parse_formula, parse_spec
from .syntax import ParseError, Program, parse_program
from .translate import tau_star

__all__ = [
    "AnalysisError", "IOProgram", "IOProgramError", "ParseError", "Program", "Sort", "Specification",
    "alpha_equivalent", "analyze", "build_obligations", "comp", "completed_definition",
    "completion_listing", "format_formula", "is_tight", "normalize_names", "parse_formula",
    "parse_program", "parse_spec", "simplify", "tau_star", "universal_completion",
    "uses_private_recursion",
]
