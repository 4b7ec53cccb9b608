"""Exact dynamical degrees of correspondences on catalog varieties.

Numerical rings of products of projective spaces (and small declared
spaces), a rewrite system for torus-type correspondences, exact degree
growth rates, relative degrees over semi-conjugacies, reducible iteration,
and executable checks of the inequalities relating them.
"""

from .algebra import Correspondence, add, compose, iterate, reverse, scale
from .atoms import (UndeclaredComposition, autsum, diagonal, power_map, product_atom, reverse_power, torus,
                    use_characteristic)
from .degrees import DegreeReport, degree_sequence, dyn_degree, dyn_degrees
from .reducible import ComponentGraph, Edge, graph_dyn_degree
from .relative import SemiConjugacy, make_projection_semiconj, rel_dyn_degree, rel_dyn_degrees
from .rings import CycleClass, Point, Product, Projective
from .scene import Scene, parse_scene
from .verify import CheckReport

__version__ = "0.1.0"

__all__ = [
    "Correspondence", "add", "compose", "iterate", "reverse", "scale",
    "UndeclaredComposition", "autsum", "diagonal", "power_map", "product_atom", "reverse_power", "torus",
    "use_characteristic", "DegreeReport", "degree_sequence", "dyn_degree", "dyn_degrees",
    "ComponentGraph", "Edge", "graph_dyn_degree", "SemiConjugacy", "make_projection_semiconj",
    "rel_dyn_degree", "rel_dyn_degrees", "CycleClass", "Point", "Product", "Projective",
    "Scene", "parse_scene", "CheckReport",
]
