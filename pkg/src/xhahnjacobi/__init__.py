"""Exceptional Hahn and Jacobi polynomials with arbitrarily many continuous parameters.

Everything that can be exact is exact: rationals, polynomials, determinants
and parameter derivatives (through first order jets).  Only integrals
against the continuous Jacobi-type weights use high precision quadrature.
"""
from .exact import Jet, Poly, RationalFunction, DiscreteMeasure, X
from .params import ParamSet, ParameterError
from .family import FamilySpec, GuaranteeError, sigma
from .classical import hahn, dual_hahn, jacobi
from .perturbed import hh, hh_general, pp, pp_general
from .krall import KrallSpec, q_poly
from .exceptional_hahn import (xhahn, omega_hahn, lambda_hahn, difference_operator, orthogonality_measure,
                               xhahn_norm)
from .exceptional_jacobi import (JacobiFamilySpec, xjacobi, omega_jacobi, differential_operator, jacobi_weight,
                                 xjacobi_norm)
from .legendre import xle_polynomial, verify_legendre_equivalence

__version__ = "0.1.0"

__all__ = [
    "Jet", "Poly", "RationalFunction", "DiscreteMeasure", "X", "ParamSet", "ParameterError",
    "FamilySpec", "JacobiFamilySpec", "GuaranteeError", "sigma", "hahn", "dual_hahn", "jacobi",
    "hh", "hh_general", "pp", "pp_general", "KrallSpec", "q_poly", "xhahn", "omega_hahn",
    "lambda_hahn", "difference_operator", "orthogonality_measure", "xhahn_norm", "xjacobi",
    "omega_jacobi", "differential_operator", "jacobi_weight", "xjacobi_norm", "xle_polynomial",
    "verify_legendre_equivalence",
]
