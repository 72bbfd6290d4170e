"""weylkit: exact computations with idealizers of curves in the second Weyl algebra.

Modules
-------
linalg      exact rational RREF, rank and nullspaces
poly        bivariate / Laurent polynomials, deg-lex order, principal-ideal division
weyl        normal-form arithmetic in A_2 and the Bernstein filtration
idealizer   colon ideals, idealizer membership and filtered bases
curve       monomial cusps y^a = x^b seen from the normalization k[t]
torsion     the point module ((x,y)A_2 : fA_2)/(x,y)A_2 and its growth
cli         command-line front end
"""
from .curve import MonomialCurve, NumericalSemigroup, TOperator, preserves_ring, project_class, t_act
from .idealizer import CurvePoly, idealizer_filtered_basis, idealizer_member, quotient_dim
from .linalg import QMatrix, nullspace_basis, rank, rref
from .parse import parse_poly, parse_toperator, parse_weyl
from .poly import BiPoly, LaurentPoly
from .torsion import growth_table, m_basis
from .weyl import WeylOp, act, bernstein_basis, bernstein_degree, weyl_mul

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "LaurentPoly",
    "QMatrix",
    "rref",
    "rank",
    "nullspace_basis",
    "WeylOp",
    "weyl_mul",
    "act",
    "bernstein_degree",
    "bernstein_basis",
    "CurvePoly",
    "idealizer_member",
    "idealizer_filtered_basis",
    "quotient_dim",
    "MonomialCurve",
    "NumericalSemigroup",
    "TOperator",
    "t_act",
    "preserves_ring",
    "project_class",
    "m_basis",
    "growth_table",
    "parse_poly",
    "parse_weyl",
    "parse_toperator",
]
