"""Exact multiplicity counting via trails, with parametrization machinery and oracles."""

__version__ = "0.1.0"

from .liealg import CartanData, WeylElement, cartan, longest_element, weyl_from_word
from .repmod import Module, build_highest_weight_module, build_module
from .trails import Trail, enumerate_trails
from .semifield import POS, SYM, TROP, SFExpr
from .ineq import IneqSystem, count_lattice, enumerate_lattice
from .param import crystal_apply, lusztig_to_string, string_cone, transition
from .counting import MultiplicityQuery, count, multiplicity
from .oracle import branching_multiplicity, tensor_multiplicity

__all__ = [
    "__version__", "CartanData", "WeylElement", "cartan", "longest_element", "weyl_from_word",
    "Module", "build_highest_weight_module", "build_module", "Trail", "enumerate_trails",
    "POS", "SYM", "TROP", "SFExpr", "IneqSystem", "count_lattice", "enumerate_lattice",
    "crystal_apply", "lusztig_to_string", "string_cone", "transition",
    "MultiplicityQuery", "count", "multiplicity", "branching_multiplicity", "tensor_multiplicity",
]
