"""Shellings and homology of q-complexes over finite fields."""

__version__ = "0.1.0"

from .gflin import Field, FieldElement, Subspace, gf, span, subspace_from_generators
from .subspace import enumerate_all_subspaces, enumerate_grassmannian, gaussian_binomial
from .qcomplex import QComplex, generate, q_sphere
from .qmatroid import RankOracle, uniform_matroid
from .homology import HomologyReport, expected_sphere_homology, finite_space_homology

__all__ = [
    "Field", "FieldElement", "Subspace", "gf", "span", "subspace_from_generators",
    "enumerate_all_subspaces", "enumerate_grassmannian", "gaussian_binomial",
    "QComplex", "generate", "q_sphere",
    "RankOracle", "uniform_matroid",
    "HomologyReport", "expected_sphere_homology", "finite_space_homology",
]
