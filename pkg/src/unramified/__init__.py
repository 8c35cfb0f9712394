"""Exact verification of unramified local computations: characters of
classical dual groups, Casselman-Shalika values, lattice-sum zeta
integrals, L-factors, and the matrix embeddings behind them."""

__version__ = "0.1.0"

from .exactring import BiSeries, ExactScalar, LaurentXY, geom_inverse
from .rootchar import (
    GL,
    GSp,
    GSpinD,
    HighestWeight,
    SatakePoint,
    Sp,
    SpinD,
    char_value,
    random_satake,
    random_satake_bundle,
    weight,
    weight_multiset,
)
from .whittaker import Cocharacter, GLp, GSO, GSpinB, cs_value
from .lfactor import cauchy_lhs, cauchy_rhs, l_factor, spin, std, tensor
from .identities import (
    IdentityReport,
    check_cauchy,
    check_g_equivalence,
    check_schur_gl,
    check_schur_sp,
    g_function,
)
from .zeta import CASE_NAMES, evaluate_zeta, get_case, lattice_points, verify_zeta
from .matgroups import (
    QQ,
    ExactMatrix,
    Field,
    GroupSpec,
    apply_map,
    check_map_properties,
    check_pinning,
    check_stabilizers,
    enumerate_orbits,
    group_membership,
)
from .harness import SuiteConfig, list_cases, run_suite

__all__ = [
    "__version__",
    "BiSeries",
    "ExactScalar",
    "LaurentXY",
    "geom_inverse",
    "GL",
    "GSp",
    "GSpinD",
    "HighestWeight",
    "SatakePoint",
    "Sp",
    "SpinD",
    "char_value",
    "random_satake",
    "random_satake_bundle",
    "weight",
    "weight_multiset",
    "Cocharacter",
    "GLp",
    "GSO",
    "GSpinB",
    "cs_value",
    "cauchy_lhs",
    "cauchy_rhs",
    "l_factor",
    "spin",
    "std",
    "tensor",
    "IdentityReport",
    "check_cauchy",
    "check_g_equivalence",
    "check_schur_gl",
    "check_schur_sp",
    "g_function",
    "CASE_NAMES",
    "evaluate_zeta",
    "get_case",
    "lattice_points",
    "verify_zeta",
    "QQ",
    "ExactMatrix",
    "Field",
    "GroupSpec",
    "apply_map",
    "check_map_properties",
    "check_pinning",
    "check_stabilizers",
    "enumerate_orbits",
    "group_membership",
    "SuiteConfig",
    "list_cases",
    "run_suite",
]
