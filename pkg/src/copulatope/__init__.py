"""Exact polyhedral toolkit for discrete copulas and quasi-copulas.

Subpackages:
    exact       rational scalars, exact linear algebra, exact LP
    polytope    H/V representations, vertex enumeration, facet certification
    families    constructors for the copula/quasi-copula polytope families
    transforms  grid <-> density maps, transpose/flip/direct-sum, decomposition
    copula_ops  functional predicates, checkerboard extension, Spearman's rho
    census      decomposable/indecomposable vertex census, generating functions
    maxent      maximum-entropy density selection inside a family polytope
    serialize   cdd-style and JSON file formats
    cli         command-line interface
"""

from .exact import Rational, RatMatrix, det, lp_solve, rank, rat, rat_from_str, rat_normalize, rat_to_str
from .polytope import (
    HRep,
    LinConstraint,
    VRep,
    certify_minimal,
    contains,
    dimension,
    enumerate_vertices,
    is_vertex,
)

__all__ = [
    "Rational",
    "RatMatrix",
    "det",
    "rank",
    "rat",
    "rat_normalize",
    "rat_from_str",
    "rat_to_str",
    "lp_solve",
    "HRep",
    "LinConstraint",
    "VRep",
    "enumerate_vertices",
    "certify_minimal",
    "contains",
    "is_vertex",
    "dimension",
]

__version__ = "0.1.0"
