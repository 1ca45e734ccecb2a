"""Symplectic lattice, tree Lie algebra and Moyal-Weyl product."""
from .lattice import SymplecticLattice, omega
from .moyal import PolynomialObservable, commutator, moyal_product, poisson_bracket
from .trees import (LabeledTree, TreeCombination, basis_trees, from_shape, normalize, strut,
                    tree_block, tree_bracket, tree_reduce)

__all__ = [
    "SymplecticLattice", "omega",
    "PolynomialObservable", "moyal_product", "poisson_bracket", "commutator",
    "LabeledTree", "TreeCombination", "strut", "from_shape", "tree_reduce", "tree_bracket",
    "normalize", "tree_block", "basis_trees",
]
