import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kenmotsu import autodiff
from kenmotsu.autodiff import Dual

finite = st.floats(-2.0, 2.0, allow_nan=False)


def test_product_and_quotient_rules():
    x = Dual(3.0, np.array([1.0]))
    y = (x * x + 2.0) / x
    assert y.val == pytest.approx(11.0 / 3.0)
    assert y.tan[0] == pytest.approx(1.0 - 2.0 / 9.0)


def test_reverse_operands():
    x = Dual(2.0, np.array([1.0]))
    assert (1.0 - x).tan[0] == -1.0
    assert (4.0 / x).tan[0] == pytest.approx(-1.0)
    assert (2.0 ** x).tan[0] == pytest.approx(4.0 * math.log(2.0))


def test_numpy_ufuncs_dispatch():
    x = Dual(0.3, np.array([1.0]))
    for fn, d in [(np.exp, math.exp(0.3)), (np.sin, math.cos(0.3)), (np.cos, -math.sin(0.3)),
                  (np.log, 1 / 0.3), (np.sqrt, 0.5 / math.sqrt(0.3))]:
        assert fn(x).tan[0] == pytest.approx(d)


def test_dual_times_object_array():
    x = Dual(2.0, np.array([1.0, 0.0]))
    out = x * np.array([1.0, 3.0], dtype=object)
    assert [o.val for o in out] == [2.0, 6.0]
    assert out[1].tan.tolist() == [3.0, 0.0]


def test_float_conversion_is_refused():
    with pytest.raises(TypeError):
        float(Dual(1.0, np.zeros(1)))


def test_jacobian_shape_and_values():
    def f(p):
        return np.array([p[0] * p[1], np.exp(p[1])], dtype=object)

    val, J = autodiff.value_and_jacobian(f, [2.0, 0.0])
    assert val.tolist() == [0.0, 1.0]
    np.testing.assert_allclose(J, [[0.0, 2.0], [0.0, 1.0]])


def test_constants_have_zero_tangent():
    val, J = autodiff.value_and_jacobian(lambda p: np.array([1.0, p[0]], dtype=object), [5.0])
    np.testing.assert_allclose(J, [[0.0], [1.0]])


@settings(max_examples=50, deadline=None)
@given(finite, finite, finite)
def test_jvp_matches_central_difference(a, b, c):
    def f(p):
        return np.array([np.sin(p[0]) * p[1] + np.exp(p[2] * p[0]), p[1] ** 3 / (2.0 + p[2] ** 2)],
                        dtype=object)

    p = np.array([a, b, c])
    v = np.array([0.3, -0.7, 0.5])
    _, d = autodiff.jvp(f, p, v)
    h = 1e-6
    fd = (autodiff.split(f(p + h * v), 1)[0] - autodiff.split(f(p - h * v), 1)[0]) / (2 * h)
    np.testing.assert_allclose(d, fd, rtol=1e-6, atol=1e-6)


@settings(max_examples=30, deadline=None)
@given(finite, finite)
def test_jacobian_contracts_to_jvp(a, b):
    def f(p):
        return np.array([p[0] * np.cos(p[1]), p[0] ** 2 + p[1]], dtype=object)

    v = np.array([1.5, -0.25])
    _, J = autodiff.value_and_jacobian(f, [a, b])
    _, d = autodiff.jvp(f, [a, b], v)
    np.testing.assert_allclose(J @ v, d, atol=1e-12)
