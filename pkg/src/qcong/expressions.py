"""Parameter expressions and constraints for custom case files.

Expressions are rational arithmetic over named integer parameters:

    2*d*(d - 3)/2     n // 2 + 1     -1/(p - 1)     max(r, d - r)

Constraints are clauses separated by ``;`` or ``,``:

    d >= 4                       comparisons, chains allowed (2 <= r < d)
    n == -1 (mod d)              linear congruences
    d even / n odd / p prime     parity and primality
    gcd(d, r) == 1               any comparison of expressions

Parsing goes through :mod:`ast` with a whitelist of node types, so no name,
attribute or call outside the table below can ever be evaluated.
"""

from __future__ import annotations

import ast
import operator
import re
from collections.abc import Callable, Collection, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from qcong.exact import is_prime


class ExpressionError(ValueError):
    """Raised for text outside the expression language."""


_BINARY: dict[type[ast.operator], Callable[[Fraction, Fraction], Fraction]] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}

_COMPARE: dict[type[ast.cmpop], Callable[[Fraction, Fraction], bool]] = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ExpressionError(f"{what} needs integers, got {value}")
    return value.numerator


def _gcd(*values: Fraction) -> Fraction:
    return Fraction(gcd(*(_integral(v, "gcd") for v in values)))


_FUNCTIONS: dict[str, Callable[..., Fraction]] = {
    "min": lambda *v: min(v),
    "max": lambda *v: max(v),
    "abs": lambda v: abs(v),
    "gcd": _gcd,
}


@dataclass(frozen=True)
class Expression:
    """A parsed expression; evaluation yields an exact Fraction."""

    text: str
    tree: ast.expr
    names: frozenset[str]

    def evaluate(self, params: Mapping[str, int]) -> Fraction:
        return _evaluate(self.tree, params)

    def evaluate_int(self, params: Mapping[str, int]) -> int:
        """Evaluates and insists on an integer result.

        Raises:
          ExpressionError: If the value is fractional.
        """
        return _integral(self.evaluate(params), f"'{self.text}'")

    @property
    def is_constant(self) -> bool:
        return not self.names


def _evaluate(node: ast.expr, params: Mapping[str, int]) -> Fraction:
    match node:
        case ast.Constant(value=int() as value) if not isinstance(value, bool):
            return Fraction(value)
        case ast.Name(id=name):
            return Fraction(params[name])
        case ast.UnaryOp(op=ast.USub(), operand=operand):
            return -_evaluate(operand, params)
        case ast.UnaryOp(op=ast.UAdd(), operand=operand):
            return _evaluate(operand, params)
        case ast.BinOp(left=left, op=ast.Pow(), right=right):
            exponent = _integral(_evaluate(right, params), "**")
            return _evaluate(left, params) ** exponent
        case ast.BinOp(left=left, op=ast.FloorDiv(), right=right):
            a = _integral(_evaluate(left, params), "//")
            b = _integral(_evaluate(right, params), "//")
            return Fraction(a // b)
        case ast.BinOp(left=left, op=ast.Mod(), right=right):
            a = _integral(_evaluate(left, params), "%")
            b = _integral(_evaluate(right, params), "%")
            return Fraction(a % b)
        case ast.BinOp(left=left, op=op, right=right) if type(op) in _BINARY:
            return _BINARY[type(op)](_evaluate(left, params), _evaluate(right, params))
        case ast.Call(func=ast.Name(id=name), args=args, keywords=[]) if name in _FUNCTIONS:
            return _FUNCTIONS[name](*(_evaluate(a, params) for a in args))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def _check_tree(node: ast.AST, names: Collection[str], text: str) -> set[str]:
    used: set[str] = set()
    for child in ast.walk(node):
        match child:
            case ast.Name(id=name) if name in _FUNCTIONS:
                continue
            case ast.Name(id=name):
                if name not in names:
                    raise ExpressionError(f"unknown parameter {name!r} in '{text}'")
                used.add(name)
            case ast.Call(func=ast.Name(id=name)) if name in _FUNCTIONS:
                continue
            case ast.Constant(value=value) if isinstance(value, bool) or not isinstance(value, int):
                raise ExpressionError(f"only integer literals are allowed in '{text}'")
            case (
                ast.Constant()
                | ast.UnaryOp()
                | ast.BinOp()
                | ast.Compare()
                | ast.Load()
                | ast.unaryop()
                | ast.operator()
                | ast.cmpop()
            ):
                continue
            case _:
                raise ExpressionError(f"unsupported syntax {type(child).__name__} in '{text}'")
    return used


def parse_expression(text: str | int, names: Collection[str] = ()) -> Expression:
    """Parses an expression over the given parameter names.

    Raises:
      ExpressionError: On syntax errors, unknown names or disallowed constructs.
    """
    source = str(text).strip()
    if not source:
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(source, mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse '{source}': {exc.msg}") from exc
    if isinstance(tree, ast.Compare):
        raise ExpressionError(f"'{source}' is a comparison, not a value")
    used = _check_tree(tree, names, source)
    return Expression(source, tree, frozenset(used))


@dataclass(frozen=True)
class Constraint:
    """One clause of a constraint string."""

    text: str
    test: Callable[[Mapping[str, int]], bool]

    def holds(self, params: Mapping[str, int]) -> bool:
        return self.test(params)


_CONGRUENCE = re.compile(r"^(?P<left>.+?)==(?P<right>.+?)\(\s*mod\s+(?P<modulus>.+)\)$")
_PROPERTY = re.compile(r"^(?P<expr>.+?)\s+(?P<word>odd|even|prime)$")


def _congruence(text: str, names: Collection[str]) -> Constraint | None:
    match = _CONGRUENCE.match(text)
    if match is None:
        return None
    left = parse_expression(match["left"], names)
    right = parse_expression(match["right"], names)
    modulus = parse_expression(match["modulus"], names)

    def test(params: Mapping[str, int]) -> bool:
        m = modulus.evaluate_int(params)
        difference = left.evaluate(params) - right.evaluate(params)
        return m != 0 and difference.denominator == 1 and difference.numerator % m == 0

    return Constraint(text, test)


def _property(text: str, names: Collection[str]) -> Constraint | None:
    match = _PROPERTY.match(text)
    if match is None:
        return None
    value = parse_expression(match["expr"], names)
    word = match["word"]

    def test(params: Mapping[str, int]) -> bool:
        x = value.evaluate(params)
        if x.denominator != 1:
            return False
        if word == "prime":
            return is_prime(x.numerator)
        return x.numerator % 2 == (1 if word == "odd" else 0)

    return Constraint(text, test)


def _comparison(text: str, names: Collection[str]) -> Constraint:
    try:
        tree = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse constraint '{text}': {exc.msg}") from exc
    if not isinstance(tree, ast.Compare):
        raise ExpressionError(f"constraint '{text}' is not a comparison")
    _check_tree(tree, names, text)
    operands = [tree.left, *tree.comparators]
    ops = [type(op) for op in tree.ops]
    if any(op not in _COMPARE for op in ops):
        raise ExpressionError(f"unsupported comparison in '{text}'")

    def test(params: Mapping[str, int]) -> bool:
        values = [_evaluate(node, params) for node in operands]
        return all(_COMPARE[op](a, b) for op, a, b in zip(ops, values, values[1:], strict=False))

    return Constraint(text, test)


def _split_clauses(text: str) -> list[str]:
    clauses: list[str] = []
    depth = 0
    current = ""
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char in ";," and depth == 0:
            clauses.append(current)
            current = ""
            continue
        current += char
    clauses.append(current)
    return [c.strip() for c in clauses if c.strip()]


def parse_constraints(text: str, names: Collection[str]) -> list[Constraint]:
    """Parses a constraint string into clauses, in order.

    Raises:
      ExpressionError: If a clause is malformed or names an unknown parameter.
    """
    constraints: list[Constraint] = []
    for clause in _split_clauses(text or ""):
        parsed = _congruence(clause, names) or _property(clause, names) or _comparison(clause, names)
        constraints.append(parsed)
    return constraints
