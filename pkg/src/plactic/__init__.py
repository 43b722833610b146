"""Coherent presentations of plactic monoids: columns, Knuth relations,
hexagonal 3-cells and the crystal picture."""

from .coherence import CellCountReport, HexagonCell, cell_counts, enumerate_cells3, hexagon, knuth3_cells, precolo3_cells
from .crystals import crys_normalize, crystal_component, highest_weight, is_yamanouchi, path_eq, root_op, yamanouchi_tableau
from .engine import Derivation, RewriteStep, check_zigzag, critical_branchings, homotopical_complete, normalize, rewrite_steps, validate_order
from .presentations import PairType, Preset, Presentation2, Rule2, alpha_target, build, kappa, pair_type
from .schensted import insert, lnds, p_tableau, plactic_eq
from .words import Column, DomainError, Tableau, column_reading, japanese_reading, tableau_check

__all__ = [
    "CellCountReport", "HexagonCell", "cell_counts", "enumerate_cells3", "hexagon", "knuth3_cells",
    "precolo3_cells", "crys_normalize", "crystal_component", "highest_weight", "is_yamanouchi", "path_eq",
    "root_op", "yamanouchi_tableau", "Derivation", "RewriteStep", "check_zigzag", "critical_branchings",
    "homotopical_complete", "normalize", "rewrite_steps", "validate_order", "PairType", "Preset",
    "Presentation2", "Rule2", "alpha_target", "build", "kappa", "pair_type", "insert", "lnds", "p_tableau",
    "plactic_eq", "Column", "DomainError", "Tableau", "column_reading", "japanese_reading", "tableau_check",
]
