"""Sprague-Grundy values of impartial heap games built from arithmetic functions."""

from .engine import (
    Move, Position, SGTable, XorBasis, brute_force_sg, cached_table, mex, sg_exponent_table, sg_table,
    sum_value, winning_moves, xor_span_mex,
)
from .posexpr import format_position, parse
from .rulesets import OptionSemantics, Ruleset, allowed_set, lookup, multiplicative_partitions, options, registry
from .theorems import closed_form, closed_form_exponent, partial_claims

__all__ = [
    "Move", "OptionSemantics", "Position", "Ruleset", "SGTable", "XorBasis", "allowed_set", "brute_force_sg",
    "cached_table", "closed_form", "closed_form_exponent", "format_position", "lookup", "mex",
    "multiplicative_partitions", "options", "parse", "partial_claims", "registry", "sg_exponent_table",
    "sg_table", "sum_value", "winning_moves", "xor_span_mex",
]
