"""Numerical substrate: expression DSL, jets, quadrature, Poisson, ODE."""

from .expr import (
    DSL_VARIABLES,
    UNARY_FUNCTIONS,
    Binary,
    Const,
    Expr,
    Pow,
    Unary,
    Var,
    absval,
    as_expr,
    const,
    cos,
    diff,
    evaluate,
    exp,
    ln,
    parse_expression,
    pow_const,
    pretty,
    sin,
    sqrt,
    var,
    variables,
)
from .grid import Axis, Grid3
from .jets import DEFAULT_AXES, MAX_ORDER, Jet, evaluate_jet, jet_eval
from .ode import Trajectory, integrate_ivp
from .poisson import Rectangle, discrete_residual, solve_poisson_2d
from .quadrature import cumulative_integral_1d, cumulative_time_integral

__all__ = [
    "DSL_VARIABLES", "UNARY_FUNCTIONS", "Expr", "Const", "Var", "Unary",
    "Binary", "Pow", "parse_expression", "pretty", "evaluate", "diff",
    "variables", "as_expr", "const", "var", "exp", "ln", "sin", "cos",
    "sqrt", "absval", "pow_const", "Jet", "jet_eval", "evaluate_jet",
    "DEFAULT_AXES", "MAX_ORDER", "Axis", "Grid3", "Trajectory",
    "integrate_ivp", "Rectangle", "solve_poisson_2d", "discrete_residual",
    "cumulative_time_integral", "cumulative_integral_1d",
]
