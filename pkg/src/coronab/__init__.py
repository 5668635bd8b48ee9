"""Bezout equations and stable-rank reductions in the algebra C + B H^inf for finite Blaschke B."""

from .blaschke import (BlaschkeSpec, MembershipReport, build_blaschke, check_membership, decompose,
                       recompose)
from .errors import (AllConstantsZero, CertificationFailure, CoronaError, DimensionMismatch, DomainError,
                     IllConditioned, NearZeroPivot, NoSolution, NodeCollision, NotAMember, NotOrthogonal,
                     OrthogonalityViolated, Rejection, SearchExhausted, SingularSystem)
from .interp import basis_polys, confluent_vandermonde, hermite_interpolate, hermite_oracle
from .numcore import (NonvanishingCert, Poly, RationalFn, certify_nonvanishing, derivative, evaluate, jet,
                      poly_ext_gcd)
from .reduce import ReductionCert, SearchBudget, UnimodularPair, reduce_pair, verify_reduction
from .skew import SkewMatrix, skew_solve
from .solver import (CoronaInstance, SolveReport, bezout_unconstrained, constrained_solve,
                     correction_matrices, ideal_solve)
from .verify import GridConfig, corona_delta, residual, sup_norm

__all__ = [
    "AllConstantsZero", "BlaschkeSpec", "CertificationFailure", "CoronaError", "CoronaInstance",
    "DimensionMismatch", "DomainError", "GridConfig", "IllConditioned", "MembershipReport",
    "NearZeroPivot", "NoSolution", "NodeCollision", "NonvanishingCert", "NotAMember", "NotOrthogonal",
    "OrthogonalityViolated", "Poly", "RationalFn", "ReductionCert", "Rejection", "SearchBudget",
    "SearchExhausted", "SingularSystem", "SkewMatrix", "SolveReport", "UnimodularPair", "basis_polys",
    "bezout_unconstrained", "build_blaschke", "certify_nonvanishing", "check_membership",
    "confluent_vandermonde", "constrained_solve", "corona_delta", "correction_matrices", "decompose",
    "derivative", "evaluate", "hermite_interpolate", "hermite_oracle", "ideal_solve", "jet",
    "poly_ext_gcd", "recompose", "reduce_pair", "residual", "skew_solve", "sup_norm", "verify_reduction",
]
