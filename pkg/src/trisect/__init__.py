"""Exact homological computations for trisection diagrams of 4-manifolds.

Curves on the central surface are tracked only by their homology classes, so
every quantity here is a statement about integer lattices: cut systems are
Lagrangian summands, the intersection form comes from pairing matrices, and
Rohlin-type obstructions reduce to Arf invariants mod 2.
"""

from .errors import TrisectError
from .forms import classify_form, e8, hyperbolic, parse_form
from .heegaard import HeegaardTriple, heegaard_homology, triple_from_json
from .johnson import JohnsonSolver, spans_wedge_cube, tab_tc_generators
from .linking import (
    SubsurfaceBasis,
    arf_invariant,
    casson_knot_invariant,
    linking_form,
    q2_equals_q3,
)
from .rohlin import regluing_campaign, rohlin_obstruction
from .surface import SymplecticLattice, pairing, validate_cut_system
from .trisection import (
    PseudotrisectionDiagram,
    e8_figure_diagram,
    intersection_form,
    make_diagram,
    standard_pseudotrisection,
    standardize_basis,
)

__version__ = "0.1.0"

__all__ = [
    "TrisectError",
    "classify_form",
    "e8",
    "hyperbolic",
    "parse_form",
    "HeegaardTriple",
    "heegaard_homology",
    "triple_from_json",
    "JohnsonSolver",
    "spans_wedge_cube",
    "tab_tc_generators",
    "SubsurfaceBasis",
    "arf_invariant",
    "casson_knot_invariant",
    "linking_form",
    "q2_equals_q3",
    "regluing_campaign",
    "rohlin_obstruction",
    "SymplecticLattice",
    "pairing",
    "validate_cut_system",
    "PseudotrisectionDiagram",
    "e8_figure_diagram",
    "intersection_form",
    "make_diagram",
    "standard_pseudotrisection",
    "standardize_basis",
]
