"""cosetgi: coset graphs of finite permutation groups and GI decision procedures."""

from .perm import Permutation, parse_cycles, format_cycles, compose, inverse, power, order, cycle_type

__all__ = [
    "Permutation",
    "parse_cycles",
    "format_cycles",
    "compose",
    "inverse",
    "power",
    "order",
    "cycle_type",
]
