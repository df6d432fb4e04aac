"""Closures of weight-determined sets in finite grids, with covering-number formulas and oracles."""
from .errors import (
    ConstructionError,
    InvalidSetError,
    OracleCapError,
    UnsupportedDomainError,
    WdcError,
)
from .grid import Grid, is_su2, parse_grid
from .weightsets import WeightSet, is_admitting, l_bar, l_step, parse_weightset, t_set

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "Grid",
    "InvalidSetError",
    "OracleCapError",
    "UnsupportedDomainError",
    "WdcError",
    "WeightSet",
    "is_admitting",
    "is_su2",
    "l_bar",
    "l_step",
    "parse_grid",
    "parse_weightset",
    "t_set",
]
