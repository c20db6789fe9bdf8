"""Exact differential algebra: differential polynomial rings, Ritt reduction,
Rosenfeld-Groebner decomposition, Kolchin polynomials and generic
hypersurface intersection experiments."""

__version__ = "0.1.0"

from .coeffield import QQ, SimpleExtension, make_field
from .diffring import ELIMINATION, ORDERLY, DiffPolynomial, DiffRing, diff_homog_degree
from .numpoly import NumericalPolynomial, classify, dim_poly_of_pointset, free
from .reduction import AutoreducedSet, bounded_power_membership, full_reduce, partial_reduce
from .algebra import AlgIdeal, groebner
from .decompose import Decomposition, RegularChain, lying_over_check, radical_member, rosenfeld_groebner
from .genint import intersect_generic, make_generic, through_point_experiment, verify_bertini
from .prolong import dominance_check, jet_dimension, section_jet_dims, truncate
from .problem import ProblemError, format_problem, parse_problem

__all__ = [
    "QQ", "SimpleExtension", "make_field", "ELIMINATION", "ORDERLY", "DiffPolynomial", "DiffRing",
    "diff_homog_degree", "NumericalPolynomial", "classify", "dim_poly_of_pointset", "free",
    "AutoreducedSet", "bounded_power_membership", "full_reduce", "partial_reduce", "AlgIdeal",
    "groebner", "Decomposition", "RegularChain", "lying_over_check", "radical_member",
    "rosenfeld_groebner", "intersect_generic", "make_generic", "through_point_experiment",
    "verify_bertini", "dominance_check", "jet_dimension", "section_jet_dims", "truncate",
    "ProblemError", "format_problem", "parse_problem",
]
