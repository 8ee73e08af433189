"""Exact abelian Turaev-Viro invariants, Z_N BF expectation values and the reciprocity between them."""

from .bf import BfObservable, bf_expectation, bf_partition, free_delta
from .cellcomplex import CellComplex, Cycle, Side, builtin, dualize, load, save, validate
from .cyclotomic import PhaseSum, root_of_unity
from .homology import (HomologyProfile, bounding_data, class_of, homology_h1, linking_form,
                       linking_number)
from .intlinalg import IntMatrix, image_basis, kernel_basis, smith_normal_form, solve_integer
from .reciprocity import lemma_check, reciprocity_check, reciprocity_factor, vanishing_condition
from .tv import (BudgetExceededError, closed_labeling_count, covariant_gauge_partition,
                 spanning_tree, tv_expectation, tv_partition)

__all__ = [
    "BfObservable", "bf_expectation", "bf_partition", "free_delta",
    "CellComplex", "Cycle", "Side", "builtin", "dualize", "load", "save", "validate",
    "PhaseSum", "root_of_unity",
    "HomologyProfile", "bounding_data", "class_of", "homology_h1", "linking_form", "linking_number",
    "IntMatrix", "image_basis", "kernel_basis", "smith_normal_form", "solve_integer",
    "lemma_check", "reciprocity_check", "reciprocity_factor", "vanishing_condition",
    "BudgetExceededError", "closed_labeling_count", "covariant_gauge_partition",
    "spanning_tree", "tv_expectation", "tv_partition",
]
