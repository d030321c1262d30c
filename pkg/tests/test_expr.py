"""Expression DSL: parsing, precedence, printing, errors."""

import numpy as np
import pytest

from afdmkit import fieldkit as fk
from afdmkit.errors import (
    DisallowedVariableError,
    EvaluationDomainError,
    ExpressionSyntaxError,
    UnknownIdentifierError,
)


def test_single_variable_node():
    e = fk.parse_expression("x1", allowed_vars=("x1", "x2", "t"))
    assert isinstance(e, fk.Var)
    assert e.name == "x1"


def test_pythagorean_identity_everywhere():
    e = fk.parse_expression("sin(x1)^2 + cos(x1)^2")
    rng = np.random.default_rng(0)
    for x in rng.uniform(-10, 10, 25):
        assert abs(fk.evaluate(e, {"x1": x}) - 1.0) < 1e-14


def test_exp_of_sum():
    e = fk.parse_expression("exp(x1 + x2 + 0.5*t)")
    val = fk.evaluate(e, {"x1": 0.0, "x2": 0.0, "t": 2.0})
    assert val == pytest.approx(np.e, rel=1e-15)


def test_precedence_pow_tighter_than_unary_minus():
    e = fk.parse_expression("-x1^2")
    assert fk.evaluate(e, {"x1": 3.0}) == -9.0


def test_precedence_mul_tighter_than_add():
    e = fk.parse_expression("1 + 2*3 - 4/2")
    assert fk.evaluate(e, {}) == 5.0


def test_pow_right_associative_and_constant_folds():
    e = fk.parse_expression("2^3^2")
    assert fk.evaluate(e, {}) == 512.0


def test_pow_exponent_must_be_constant():
    with pytest.raises(ExpressionSyntaxError):
        fk.parse_expression("x1^x2")


def test_negative_constant_exponent():
    e = fk.parse_expression("x1^-2")
    assert fk.evaluate(e, {"x1": 2.0}) == 0.25


def test_syntax_error_reports_offset():
    with pytest.raises(ExpressionSyntaxError) as err:
        fk.parse_expression("exp(x1 +")
    assert err.value.offset == len("exp(x1 +")


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as err:
        fk.parse_expression("foo(x1)")
    assert err.value.name == "foo"
    with pytest.raises(UnknownIdentifierError):
        fk.parse_expression("x1 + bogus")


def test_disallowed_variable():
    with pytest.raises(DisallowedVariableError) as err:
        fk.parse_expression("x1 + zeta", allowed_vars=("x1", "x2", "t"))
    assert err.value.name == "zeta"


def test_empty_expression_rejected():
    with pytest.raises(ExpressionSyntaxError):
        fk.parse_expression("   ")


def test_domain_errors_at_evaluation_not_parse():
    e = fk.parse_expression("ln(x1)")
    with pytest.raises(EvaluationDomainError):
        fk.evaluate(e, {"x1": -1.0})
    e = fk.parse_expression("sqrt(x1)")
    with pytest.raises(EvaluationDomainError):
        fk.evaluate(e, {"x1": -1.0})
    e = fk.parse_expression("1/x1")
    with pytest.raises(EvaluationDomainError):
        fk.evaluate(e, {"x1": 0.0})


def test_vectorized_evaluation():
    e = fk.parse_expression("x1^2 + t")
    x = np.linspace(0, 1, 7)
    t = np.linspace(1, 2, 7)
    np.testing.assert_allclose(fk.evaluate(e, {"x1": x, "t": t}), x**2 + t)


def _random_tree(rng, depth, vars_):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return fk.const(round(rng.uniform(-3, 3), 3))
        return fk.var(rng.choice(vars_))
    kind = rng.integers(0, 8)
    a = _random_tree(rng, depth - 1, vars_)
    b = _random_tree(rng, depth - 1, vars_)
    if kind == 0:
        return a + b
    if kind == 1:
        return a - b
    if kind == 2:
        return a * b
    if kind == 3:
        # keep denominators away from zero
        return a / (fk.absval(b) + 1.5)
    if kind == 4:
        return fk.sin(a)
    if kind == 5:
        return fk.cos(a)
    if kind == 6:
        return fk.exp(fk.sin(a))  # bounded argument
    return fk.pow_const(fk.absval(a) + 1.2, float(rng.integers(-2, 4)))


def test_parse_pretty_roundtrip_evaluation_equivalent():
    rng = np.random.default_rng(42)
    vars_ = ["x1", "x2", "t"]
    for _ in range(1000):
        tree = _random_tree(rng, 4, vars_)
        text = fk.pretty(tree)
        reparsed = fk.parse_expression(text)
        env = {v: rng.uniform(-2, 2) for v in vars_}
        a = fk.evaluate(tree, env)
        b = fk.evaluate(reparsed, env)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a)), text


def test_operator_construction_matches_parse():
    x1, t = fk.var("x1"), fk.var("t")
    built = fk.exp(x1 + 0.5 * t) / (1 + x1**2)
    parsed = fk.parse_expression("exp(x1 + 0.5*t) / (1 + x1^2)")
    env = {"x1": 0.3, "t": 1.1}
    assert fk.evaluate(built, env) == pytest.approx(fk.evaluate(parsed, env), rel=1e-15)


def test_diff_basic_rules():
    e = fk.parse_expression("x1^2 * t + sin(x2)")
    assert fk.evaluate(fk.diff(e, "x1"), {"x1": 3.0, "x2": 0.0, "t": 2.0}) == 12.0
    assert fk.evaluate(fk.diff(e, "t"), {"x1": 3.0, "x2": 0.0, "t": 2.0}) == 9.0
    assert fk.evaluate(fk.diff(e, "x2"), {"x1": 0.0, "x2": 0.0, "t": 0.0}) == 1.0


def test_diff_matches_jet_on_random_trees():
    rng = np.random.default_rng(7)
    vars_ = ["x1", "x2", "t"]
    for _ in range(100):
        tree = _random_tree(rng, 3, vars_)
        env = {v: rng.uniform(-1.5, 1.5) for v in vars_}
        j = fk.jet_eval(tree, env, axes=("x1", "x2", "t"), order=1)
        for v, idx in (("x1", (1, 0, 0)), ("x2", (0, 1, 0)), ("t", (0, 0, 1))):
            d_sym = fk.evaluate(fk.diff(tree, v), env)
            d_jet = j.derivative(idx)
            assert abs(d_sym - d_jet) <= 1e-10 * max(1.0, abs(d_jet))
