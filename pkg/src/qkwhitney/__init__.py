"""Exact computer algebra for classical and quantum K-theoretic Whitney
presentations of type-A partial flag manifolds."""

from .coefficients import LaurentPoly, QQ_FIELD, RationalFunction, RationalFunctionField
from .exceptions import *  # noqa: F401,F403
from .groebner import ReducedGB, buchberger, min_poly, mult_matrix, standard_monomials
from .parser import ExprAst, evaluate, parse_expr, parse_value, render_ast
from .polynomials import Poly, VarTable
from .quotient import (
    ClassicalQuotient,
    CompletedQuotient,
    LiftedNormalForm,
    QuotientModel,
    classical_model,
    freeness_certificate,
    lift_reduce,
    membership_completed,
    membership_polynomial,
    structure_constants,
)
from .schubert import (
    GrothPoly,
    bruhat_leq,
    divisor_generation_check,
    double_grothendieck,
    fixed_point_restriction,
    localization_matrix,
    minimal_reps,
    schubert_in_presentation,
    triangularity_check,
)
from .series import QSeries, series_invert_unit
from .whitney import (
    FlagShape,
    RelationSet,
    build_shape,
    classical_generators,
    parse_shape,
    quantum_generators_completed,
    quantum_generators_polynomial,
    relation_set,
)

__version__ = "0.1.0"
