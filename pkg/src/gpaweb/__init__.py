"""Webs for SL_n evaluated in graph planar algebras of A~_{n-1} buildings."""

from .coeffs import Field, binomial, gaussian_binomial, signed_binomial
from .graph_core import BuildingGraph, Path, PrecisionError, enumerate_paths, tetrahedron_check
from .weight_lattice import WeightLattice
from .bruhat_tits import BruhatTitsBuilding, LatticeClass
from .webdsl import LinComb, Web, compose, parse, tensor
from .relations import RELATION_IDS, relation_grid, relation_instance
from .gpa_eval import Evaluator, eval_lincomb, eval_web, verify_relation

__all__ = [
    "Field", "binomial", "gaussian_binomial", "signed_binomial",
    "BuildingGraph", "Path", "PrecisionError", "enumerate_paths", "tetrahedron_check",
    "WeightLattice", "BruhatTitsBuilding", "LatticeClass",
    "LinComb", "Web", "compose", "parse", "tensor",
    "RELATION_IDS", "relation_grid", "relation_instance",
    "Evaluator", "eval_lincomb", "eval_web", "verify_relation",
]
