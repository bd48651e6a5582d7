"""Cone-restricted polynomial approximation toolkit.

Convex-geometric objects of exponent cones (supporting functions, dual
cones, lattice enumeration), Smith-normal-form fiber maps for degenerate
exponent sets, the log-coordinate extremal function of a Reinhardt compact
with hull certificates, and cone-series approximation experiments.
"""
from ._accel import HAVE_COMPILED, IMPL
from .errors import (
    BetaInCone,
    BudgetExceeded,
    ConeHullError,
    DimensionMismatch,
    DivergentOnSample,
    EmptyInterior,
    EmptyKernel,
    IdenticalPoints,
    NoFullSupportPiece,
    PreconditionViolated,
    SchemaError,
    ZeroCoordinate,
)
from .extremal import (
    HullCertificate,
    ReinhardtBody,
    VskValue,
    eval_vsk,
    hull_membership,
    hull_sampler,
    siciak_monomial,
    support_A,
    vsk_on_axes,
)
from .lattice import (
    LatticeMap,
    SeparationCertificate,
    fiber_structure,
    fiber_through,
    independent_exponents,
    proper_box_pullback,
    separate_points,
)
from .polytope import (
    ConeRep,
    ExponentSet,
    RationalPolytope,
    contains,
    distance_growth,
    dual_cone,
    enumerate_exponents,
    lattice_distance,
    minimal_scaling,
    refine,
    section,
    support,
)
from .series import (
    ConeSeries,
    HullDescription,
    TruncationReport,
    convergence_hull,
    escape_witness,
    hull_vs_K_gap,
    sup_error,
    truncate,
)

__version__ = "0.1.0"

__all__ = [
    "BetaInCone", "BudgetExceeded", "ConeHullError", "ConeRep", "ConeSeries",
    "DimensionMismatch", "DivergentOnSample", "EmptyInterior", "EmptyKernel",
    "ExponentSet", "HAVE_COMPILED", "HullCertificate", "HullDescription",
    "IMPL", "IdenticalPoints", "LatticeMap", "NoFullSupportPiece",
    "PreconditionViolated", "RationalPolytope", "ReinhardtBody", "SchemaError",
    "SeparationCertificate", "TruncationReport", "VskValue", "ZeroCoordinate",
    "contains", "convergence_hull", "distance_growth", "dual_cone",
    "enumerate_exponents", "escape_witness", "eval_vsk", "fiber_structure",
    "fiber_through", "hull_membership", "hull_sampler", "hull_vs_K_gap",
    "independent_exponents", "lattice_distance", "minimal_scaling",
    "proper_box_pullback", "refine", "section", "separate_points",
    "siciak_monomial", "sup_error", "support", "support_A", "truncate",
    "vsk_on_axes",
]
