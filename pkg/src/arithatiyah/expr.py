"""Scalar expressions in one complex chart coordinate.

Expressions are plain sympy objects built from the two symbols ``Z`` and
``ZB`` (the coordinate and its conjugate, treated as independent variables),
complex constants, ``+``, ``*``, integer powers, ``exp`` and ``log``.
Treating ``z`` and ``conj(z)`` as independent makes the Wirtinger operators
ordinary partial derivatives.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import sympy as sp

from .errors import DomainError

Z = sp.Symbol("z")
ZB = sp.Symbol("zb")

Expr = sp.Expr

# |guard| below this at a sample point counts as vanishing
GUARD_TOL = 1e-13


def as_expr(value) -> sp.Expr:
    if isinstance(value, sp.Basic):
        return value
    if isinstance(value, complex):
        return sp.Float(value.real) + sp.I * sp.Float(value.imag)
    return sp.sympify(value)


def conj(e) -> sp.Expr:
    """Complex conjugate, swapping ``z`` and ``zb`` and conjugating constants.

    ``log`` is conjugated argumentwise, which is correct for the principal
    branch away from the negative real axis.
    """
    e = as_expr(e)
    return _conj(e)


@lru_cache(maxsize=4096)
def _conj(e):
    if e is Z:
        return ZB
    if e is ZB:
        return Z
    if e.is_Number:
        return e
    if e is sp.I:
        return -sp.I
    if e.is_NumberSymbol:
        return e
    if not e.args:
        return sp.conjugate(e)
    return e.func(*[_conj(a) for a in e.args])


def wirtinger(e) -> tuple[sp.Expr, sp.Expr]:
    """Return ``(de/dz, de/dzbar)``."""
    e = as_expr(e)
    return sp.diff(e, Z), sp.diff(e, ZB)


def is_holomorphic(e) -> bool:
    e = as_expr(e)
    if ZB not in e.free_symbols:
        return True
    return simplify(sp.diff(e, ZB)) == 0


def compose(e, t) -> sp.Expr:
    """Substitute a holomorphic coordinate change ``z -> t(z)`` into ``e``."""
    e = as_expr(e)
    t = as_expr(t)
    return e.xreplace({Z: t, ZB: conj(t)})


def simplify(e) -> sp.Expr:
    """Normal form used for exact equality tests (rational-function cancel)."""
    e = as_expr(e)
    if e.is_Number:
        return e
    out = sp.cancel(sp.together(e))
    return out


def is_zero(e) -> bool:
    out = simplify(e)
    if out == 0:
        return True
    # exp/log terms can survive cancel; fall back on the general simplifier
    return sp.simplify(out) == 0


def guards(e) -> tuple[sp.Expr, ...]:
    """Subexpressions that must not vanish: denominators and log arguments."""
    return _guards(as_expr(e))


@lru_cache(maxsize=4096)
def _guards(e):
    found = []
    for node in sp.preorder_traversal(e):
        if isinstance(node, sp.Pow) and node.exp.is_negative:
            found.append(node.base)
        elif isinstance(node, sp.log):
            found.append(node.args[0])
    return tuple(dict.fromkeys(found))


@lru_cache(maxsize=8192)
def _compiled(e):
    return sp.lambdify((Z, ZB), e, modules="numpy")


def evaluate(e, points, check: bool = True) -> np.ndarray | complex:
    """Evaluate at complex points (scalar or array), ``zb`` bound to ``conj(z)``.

    Raises DomainError where a denominator or log argument vanishes.
    """
    e = as_expr(e)
    p = np.asarray(points, dtype=complex)
    pb = np.conj(p)
    if check:
        for g in guards(e):
            with np.errstate(all="ignore"):
                gv = np.asarray(_compiled(g)(p, pb), dtype=complex)
            bad = ~np.isfinite(gv) | (np.abs(gv) <= GUARD_TOL)
            if np.any(bad):
                where = np.broadcast_to(p, bad.shape)[bad].ravel()[0] if bad.shape else p
                raise DomainError(f"{g} vanishes at {complex(where)}")
    with np.errstate(all="ignore"):
        out = np.asarray(_compiled(e)(p, pb), dtype=complex)
    out = np.broadcast_to(out, p.shape).copy() if out.shape != p.shape else out
    if check and not np.all(np.isfinite(out)):
        raise DomainError(f"{e} is not finite at some sample point")
    if out.ndim == 0:
        return complex(out)
    return out
