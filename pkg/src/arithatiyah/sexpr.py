"""Prefix S-expression text format for chart expressions.

Example: ``(pow (add 1 (mul z (conj z))) -1)`` is ``1/(1 + z zbar)``.

Atoms: integers, decimals, rationals ``p/q``, ``z``, ``zb``, ``i``, ``pi``.
Operators: ``add`` ``sub`` ``mul`` ``div`` ``neg`` ``pow`` (integer
exponent) ``exp`` ``log`` ``conj``.
"""

from __future__ import annotations

import re
from fractions import Fraction

import sympy as sp

from .errors import ParseError
from .expr import ZB, Z, as_expr, conj

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")
_RATIONAL = re.compile(r"^[+-]?\d+/\d+$")
_INT = re.compile(r"^[+-]?\d+$")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


def _atom(tok, at):
    if tok == "z":
        return Z
    if tok == "zb":
        return ZB
    if tok == "i":
        return sp.I
    if tok == "pi":
        return sp.pi
    if _INT.match(tok):
        return sp.Integer(int(tok))
    if _RATIONAL.match(tok):
        f = Fraction(tok)
        return sp.Rational(f.numerator, f.denominator)
    try:
        return sp.Float(float(tok))
    except ValueError:
        raise ParseError(f"unknown atom {tok!r}", at) from None


_UNARY = {"neg": lambda a: -a, "exp": sp.exp, "log": sp.log, "conj": conj}


def _build(op, args, at):
    if op == "add":
        return sp.Add(*args)
    if op == "mul":
        return sp.Mul(*args)
    if op == "sub":
        if len(args) != 2:
            raise ParseError("sub takes two arguments", at)
        return args[0] - args[1]
    if op == "div":
        if len(args) != 2:
            raise ParseError("div takes two arguments", at)
        return args[0] / args[1]
    if op == "pow":
        if len(args) != 2 or not args[1].is_Integer:
            raise ParseError("pow takes a base and an integer exponent", at)
        return sp.Pow(args[0], args[1])
    if op in _UNARY:
        if len(args) != 1:
            raise ParseError(f"{op} takes one argument", at)
        return _UNARY[op](args[0])
    raise ParseError(f"unknown operator {op!r}", at)


def parse(text: str) -> sp.Expr:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    expr, pos = _parse_at(tokens, 0)
    if pos != len(tokens):
        raise ParseError("trailing input", tokens[pos][1])
    return expr


def _parse_at(tokens, pos):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input", None)
    tok, at = tokens[pos]
    if tok == ")":
        raise ParseError("unexpected ')'", at)
    if tok != "(":
        return _atom(tok, at), pos + 1
    if pos + 1 >= len(tokens):
        raise ParseError("unterminated list", at)
    op, _ = tokens[pos + 1]
    pos += 2
    args = []
    while True:
        if pos >= len(tokens):
            raise ParseError("unterminated list", at)
        if tokens[pos][0] == ")":
            return _build(op, args, at), pos + 1
        arg, pos = _parse_at(tokens, pos)
        args.append(arg)


def dumps(e) -> str:
    """Serialize an expression; inverse of :func:`parse` up to sympy normalization."""
    return _dump(as_expr(e))


def _ordered(args):
    return sorted(args, key=sp.default_sort_key)


def _dump(e):
    if e is Z:
        return "z"
    if e is ZB:
        return "(conj z)"
    if e is sp.I:
        return "i"
    if e is sp.pi:
        return "pi"
    if e is sp.E:
        return "(exp 1)"
    if e.is_Integer:
        return str(int(e))
    if e.is_Rational:
        return f"{e.p}/{e.q}"
    if e.is_Float:
        return repr(float(e))
    if isinstance(e, sp.Add):
        return "(add " + " ".join(_dump(a) for a in _ordered(e.args)) + ")"
    if isinstance(e, sp.Mul):
        return "(mul " + " ".join(_dump(a) for a in _ordered(e.args)) + ")"
    if isinstance(e, sp.Pow):
        if not e.exp.is_Integer:
            raise ValueError(f"non-integer power not representable: {e}")
        return f"(pow {_dump(e.base)} {int(e.exp)})"
    if isinstance(e, sp.exp):
        return f"(exp {_dump(e.args[0])})"
    if isinstance(e, sp.log):
        return f"(log {_dump(e.args[0])})"
    raise ValueError(f"expression node not representable: {type(e).__name__}")
