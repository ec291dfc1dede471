import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kenmotsu import autodiff
from kenmotsu.errors import ConfigError
from kenmotsu.expr import parse


def test_operators_and_precedence():
    f = parse("1 + 2*t^2 - t/4", ("t",))
    assert f([2.0]) == pytest.approx(1 + 8 - 0.5)
    assert parse("-t^2")([3.0]) == pytest.approx(-9.0)


def test_functions_and_variables():
    f = parse("exp(x)*sin(y) + sqrt(log(1 + x^2))", ("x", "y"))
    x, y = 0.7, -0.3
    assert f([x, y]) == pytest.approx(math.exp(x) * math.sin(y) + math.sqrt(math.log(1 + x * x)))


def test_duals_flow_through():
    _, J = autodiff.value_and_jacobian(lambda p: np.array([parse("exp(2*z)", ("z",))(p)], dtype=object),
                                       [0.5])
    assert J[0, 0] == pytest.approx(2 * math.exp(1.0))


@pytest.mark.parametrize("bad", ["", "t +", "foo(t)", "s", "__import__('os')", "t.real", "[t]",
                                 "exp(t, t)", "True"])
def test_rejected_inputs(bad):
    with pytest.raises(ConfigError):
        parse(bad, ("t",))


@settings(max_examples=60, deadline=None)
@given(st.floats(-2, 2), st.floats(0.1, 3), st.integers(1, 4))
def test_matches_python_arithmetic(a, b, n):
    text = f"({a})*x^{n} + cos(x)/({b})"
    f = parse(text, ("x",))
    for x in (-0.5, 0.0, 1.25):
        assert f([x]) == pytest.approx(a * x ** n + math.cos(x) / b, rel=1e-12, abs=1e-12)
