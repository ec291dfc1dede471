"""A small arithmetic expression language for warping functions and metric entries.

Grammar: numbers, variable names, ``+ - * / ^`` (``**`` also accepted),
unary minus, parentheses and the functions exp, sin, cos, log, sqrt.
Compiled expressions accept floats or dual numbers.
"""

from __future__ import annotations

import ast
import operator
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError

FUNCTIONS: dict[str, Callable] = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "log": np.log,
    "sqrt": np.sqrt,
}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _compile(node, names: dict[str, int]) -> Callable:
    if isinstance(node, ast.Expression):
        return _compile(node.body, names)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        c = float(node.value)
        return lambda v: c
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ConfigError(f"unknown variable {node.id!r} (expected one of {sorted(names)})")
        i = names[node.id]
        return lambda v: v[i]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        op = _BINOPS[type(node.op)]
        left, right = _compile(node.left, names), _compile(node.right, names)
        return lambda v: op(left(v), right(v))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        op = _UNARY[type(node.op)]
        inner = _compile(node.operand, names)
        return lambda v: op(inner(v))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        fn = FUNCTIONS.get(node.func.id)
        if fn is None:
            raise ConfigError(f"unknown function {node.func.id!r}")
        if len(node.args) != 1:
            raise ConfigError(f"{node.func.id} takes one argument")
        arg = _compile(node.args[0], names)
        return lambda v: fn(arg(v))
    raise ConfigError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse(text: str, variables: Sequence[str] = ("t",)) -> Callable:
    """Compile ``text`` into ``f(values)`` where ``values[i]`` binds ``variables[i]``."""
    if not isinstance(text, str) or not text.strip():
        raise ConfigError("empty expression")
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse {text!r}: {exc.msg}") from exc
    return _compile(tree, {v: i for i, v in enumerate(variables)})
