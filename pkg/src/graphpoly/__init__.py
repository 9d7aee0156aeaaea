"""Exact graph polynomials theta_G(beta, gamma) and omega_G(beta) on multigraphs.

Also: Tutte and matching polynomials, sub-coregraph counts, zeros of omega,
and a numerical Ising/Bethe harness.
"""

from .errors import (
    DivisibilityError,
    DomainError,
    GraphPolyError,
    GuardExceeded,
    InputError,
    NumericError,
    ParseError,
    PreconditionError,
)
from .matching import matching_counts, matching_polynomial, monomer_dimer
from .multigraph import (
    Edge,
    Multigraph,
    bouquet,
    complete,
    cycle,
    dumbbell,
    from_edge_list,
    path,
    petersen,
    theta_graph,
)
from .omega import OmegaResult, Route, omega, omega_zeros
from .polynomial import BiPoly, Poly, f_poly, poly_from_json, poly_to_json
from .theta import (
    Algorithm,
    ThetaResult,
    WeightedInstance,
    count_by_degree3_vertices,
    count_subcoregraphs,
    subcoregraph_bounds,
    theta,
    theta_weighted,
    tutte,
)

__all__ = [
    "Algorithm", "BiPoly", "DivisibilityError", "DomainError", "Edge", "GraphPolyError",
    "GuardExceeded", "InputError", "Multigraph", "NumericError", "OmegaResult", "ParseError",
    "Poly", "PreconditionError", "Route", "ThetaResult", "WeightedInstance", "bouquet",
    "complete", "count_by_degree3_vertices", "count_subcoregraphs", "cycle", "dumbbell",
    "f_poly", "from_edge_list", "matching_counts", "matching_polynomial", "monomer_dimer",
    "omega", "omega_zeros", "path", "petersen", "poly_from_json", "poly_to_json",
    "subcoregraph_bounds", "theta", "theta_graph", "theta_weighted", "tutte",
]
