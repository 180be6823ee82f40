"""Finite orthomodular lattices, s-maps and Bell-type inequalities with exact arithmetic."""

from ._omlbell import (
    Error,
    Lattice,
    NMap,
    ParseError,
    SMap,
    State,
    ValidationError,
    check,
    example1_smap,
    extend,
    find_smap,
    load_map,
    maximize,
    parse_map,
    run_cli,
    sample_smaps,
    scan,
)

__all__ = [
    "Error",
    "Lattice",
    "NMap",
    "ParseError",
    "SMap",
    "State",
    "ValidationError",
    "check",
    "example1_smap",
    "extend",
    "find_smap",
    "load_map",
    "maximize",
    "parse_map",
    "run_cli",
    "sample_smaps",
    "scan",
]
