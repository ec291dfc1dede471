"""Forward-mode dual numbers with a vector of tangents.

A :class:`Dual` carries a value and the directional derivatives of that value
along ``k`` seeded directions.  Chart functions written with ordinary
arithmetic and ``numpy`` elementary functions (``np.exp``, ``np.sin``, ...)
evaluate transparently on floats and on duals, which is how the metric,
structure tensors and maps get their exact first derivatives.
"""

from __future__ import annotations

import math

import numpy as np


class Dual:
    """Value plus tangent vector ``a + b·ε`` with ``ε_i ε_j = 0``."""

    __slots__ = ("val", "tan")

    def __init__(self, val, tan):
        self.val = float(val)
        self.tan = tan

    def __repr__(self):
        return f"Dual({self.val!r}, {self.tan!r})"

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.tan + other.tan)
        return Dual(self.val + other, self.tan)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.tan - other.tan)
        return Dual(self.val - other, self.tan)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.tan)

    def __neg__(self):
        return Dual(-self.val, -self.tan)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            return Dual(self.val * other.val, self.val * other.tan + other.val * self.tan)
        return Dual(self.val * other, self.tan * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        if isinstance(other, Dual):
            inv = 1.0 / other.val
            return Dual(self.val * inv, (self.tan - self.val * inv * other.tan) * inv)
        return Dual(self.val / other, self.tan / other)

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        return Dual(other * inv, -other * inv * inv * self.tan)

    def __pow__(self, other):
        if isinstance(other, Dual):
            # a^b = exp(b log a)
            return (other * self.log()).exp()
        if other == 0:
            return Dual(1.0, self.tan * 0.0)
        return Dual(self.val ** other, other * self.val ** (other - 1) * self.tan)

    def __rpow__(self, other):
        base = float(other)
        out = base ** self.val
        return Dual(out, out * math.log(base) * self.tan)

    # comparisons act on the value so that piecewise code still runs
    def __lt__(self, other):
        return self.val < _val(other)

    def __le__(self, other):
        return self.val <= _val(other)

    def __gt__(self, other):
        return self.val > _val(other)

    def __ge__(self, other):
        return self.val >= _val(other)

    # elementary functions; numpy's object loops dispatch to these names
    def exp(self):
        e = math.exp(self.val)
        return Dual(e, e * self.tan)

    def log(self):
        return Dual(math.log(self.val), self.tan / self.val)

    def sin(self):
        return Dual(math.sin(self.val), math.cos(self.val) * self.tan)

    def cos(self):
        return Dual(math.cos(self.val), -math.sin(self.val) * self.tan)

    def tan_(self):
        c = math.cos(self.val)
        return Dual(math.tan(self.val), self.tan / (c * c))

    def sinh(self):
        return Dual(math.sinh(self.val), math.cosh(self.val) * self.tan)

    def cosh(self):
        return Dual(math.cosh(self.val), math.sinh(self.val) * self.tan)

    def tanh(self):
        t = math.tanh(self.val)
        return Dual(t, (1.0 - t * t) * self.tan)

    def sqrt(self):
        r = math.sqrt(self.val)
        return Dual(r, self.tan / (2.0 * r))

    def arctan(self):
        return Dual(math.atan(self.val), self.tan / (1.0 + self.val * self.val))

    def __abs__(self):
        return -self if self.val < 0 else self

    def absolute(self):
        return abs(self)

    _UFUNCS = {
        "exp": "exp",
        "log": "log",
        "sin": "sin",
        "cos": "cos",
        "tan": "tan_",
        "sinh": "sinh",
        "cosh": "cosh",
        "tanh": "tanh",
        "sqrt": "sqrt",
        "arctan": "arctan",
        "absolute": "absolute",
        "negative": "__neg__",
    }
    _BINARY = {
        "add": lambda a, b: a + b,
        "subtract": lambda a, b: a - b,
        "multiply": lambda a, b: a * b,
        "true_divide": lambda a, b: a / b,
        "divide": lambda a, b: a / b,
        "power": lambda a, b: a ** b,
    }

    def __array_ufunc__(self, ufunc, method, *inputs, **kwargs):
        if method != "__call__" or kwargs:
            return NotImplemented
        if any(isinstance(x, np.ndarray) for x in inputs):
            # broadcast through numpy's object loops
            return ufunc(*(_boxed(x) if isinstance(x, Dual) else x for x in inputs))
        name = ufunc.__name__
        if len(inputs) == 1 and name in self._UFUNCS:
            return getattr(inputs[0], self._UFUNCS[name])()
        if len(inputs) == 2 and name in self._BINARY:
            a, b = inputs
            if not isinstance(a, Dual):
                a = float(a)
            if not isinstance(b, Dual):
                b = float(b)
            return self._BINARY[name](a, b)
        return NotImplemented


def _boxed(x):
    box = np.empty((), dtype=object)
    box[()] = x
    return box


def _val(x):
    return x.val if isinstance(x, Dual) else x


def seed(point, directions):
    """Lift ``point`` to an object array of duals.

    ``directions`` has shape ``(n, k)``; coordinate ``i`` gets tangent
    ``directions[i]``.
    """
    point = np.asarray(point, dtype=float)
    directions = np.asarray(directions, dtype=float)
    out = np.empty(point.shape[0], dtype=object)
    for i in range(point.shape[0]):
        out[i] = Dual(point[i], directions[i].copy())
    return out


def split(result, k):
    """Separate a (possibly nested) dual-valued result into value and tangents.

    Returns ``(value, tangent)`` with ``tangent.shape == value.shape + (k,)``.
    Plain numbers are treated as constants.
    """
    arr = np.asarray(result, dtype=object)
    val = np.empty(arr.shape, dtype=float)
    tan = np.zeros(arr.shape + (k,), dtype=float)
    for idx, x in np.ndenumerate(arr):
        if isinstance(x, Dual):
            val[idx] = x.val
            tan[idx] = x.tan
        else:
            val[idx] = float(x)
    return val, tan


def value_and_jacobian(func, point):
    """Evaluate ``func`` at ``point`` with exact first derivatives.

    The returned derivative has shape ``value.shape + (n,)`` where the last
    axis indexes the coordinate of differentiation.
    """
    point = np.asarray(point, dtype=float)
    n = point.shape[0]
    out = func(seed(point, np.eye(n)))
    return split(out, n)


def jvp(func, point, direction):
    """Value and directional derivative of ``func`` along ``direction``."""
    point = np.asarray(point, dtype=float)
    direction = np.asarray(direction, dtype=float).reshape(-1, 1)
    val, tan = split(func(seed(point, direction)), 1)
    return val, tan[..., 0]
