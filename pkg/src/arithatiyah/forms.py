"""Differential forms on one-dimensional charts and finite ordered covers.

A :class:`Form` holds one coefficient per basis element ``1``, ``dz``,
``dzb`` and ``dzdzb`` (for ``dz^dzbar``).  Coefficients are sympy matrices,
so scalar forms are 1x1 and End(E)-valued forms are n x n; the same code
handles both.  Sign convention: ``dzbar ^ dz = -dz ^ dzbar`` and
``d(g dz) = dg ^ dz``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np
import sympy as sp

from . import expr as ex
from .errors import BidegreeError, DomainError
from .expr import ZB, Z

BASIS = ("1", "dz", "dzb", "dzdzb")
BIDEGREE = {"1": (0, 0), "dz": (1, 0), "dzb": (0, 1), "dzdzb": (1, 1)}

_WEDGE = {
    ("1", "1"): ("1", 1),
    ("1", "dz"): ("dz", 1),
    ("1", "dzb"): ("dzb", 1),
    ("1", "dzdzb"): ("dzdzb", 1),
    ("dz", "1"): ("dz", 1),
    ("dzb", "1"): ("dzb", 1),
    ("dzdzb", "1"): ("dzdzb", 1),
    ("dz", "dzb"): ("dzdzb", 1),
    ("dzb", "dz"): ("dzdzb", -1),
    ("dz", "dz"): (None, 0),
    ("dzb", "dzb"): (None, 0),
}


def _matrix(value) -> sp.ImmutableMatrix:
    if isinstance(value, sp.MatrixBase):
        return sp.ImmutableMatrix(value)
    if isinstance(value, (list, tuple)):
        return sp.ImmutableMatrix(value)
    return sp.ImmutableMatrix([[ex.as_expr(value)]])


class Form:
    """A (matrix-valued) differential form on a single chart."""

    __slots__ = ("parts", "shape")

    def __init__(self, parts: Mapping[str, object], shape=None):
        clean = {}
        for basis, value in parts.items():
            if basis not in BIDEGREE:
                raise BidegreeError(f"unknown basis element {basis!r}")
            m = _matrix(value)
            if shape is None:
                shape = m.shape
            elif m.shape != tuple(shape):
                raise ValueError(f"coefficient shape {m.shape} != {shape}")
            if not m.is_zero_matrix:
                clean[basis] = m
        self.parts = clean
        self.shape = tuple(shape) if shape is not None else (1, 1)

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, shape=(1, 1)):
        return cls({}, shape)

    @classmethod
    def function(cls, value):
        return cls({"1": value})

    @classmethod
    def one_form(cls, dz=0, dzb=0):
        a, b = _matrix(dz), _matrix(dzb)
        if a.shape != b.shape:
            # a bare 0 stands for the zero matrix of the other shape
            if b.shape == (1, 1) and b.is_zero_matrix:
                b = sp.ImmutableMatrix.zeros(*a.shape)
            elif a.shape == (1, 1) and a.is_zero_matrix:
                a = sp.ImmutableMatrix.zeros(*b.shape)
            else:
                raise ValueError(f"coefficient shapes {a.shape} and {b.shape} differ")
        return cls({"dz": a, "dzb": b}, a.shape)

    @classmethod
    def two_form(cls, value):
        return cls({"dzdzb": value})

    # accessors --------------------------------------------------------
    def coeff(self, basis: str) -> sp.ImmutableMatrix:
        return self.parts.get(basis, sp.ImmutableMatrix.zeros(*self.shape))

    def scalar(self, basis: str) -> sp.Expr:
        if self.shape != (1, 1):
            raise ValueError("not a scalar form")
        return self.coeff(basis)[0, 0]

    @property
    def bidegrees(self) -> set:
        return {BIDEGREE[b] for b in self.parts}

    def is_bidegree(self, p: int, q: int) -> bool:
        return self.bidegrees <= {(p, q)}

    def __repr__(self):
        if not self.parts:
            return "Form(0)"
        terms = ", ".join(f"{b}: {m.tolist() if m.shape != (1, 1) else m[0, 0]}" for b, m in self.parts.items())
        return f"Form({terms})"

    # arithmetic -------------------------------------------------------
    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.parts)
        for b, m in other.parts.items():
            out[b] = out[b] + sign * m if b in out else sign * m
        return Form(out, self.shape)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Form({b: -m for b, m in self.parts.items()}, self.shape)

    def __mul__(self, scalar):
        s = ex.as_expr(scalar)
        return Form({b: m * s for b, m in self.parts.items()}, self.shape)

    __rmul__ = __mul__

    def lmul(self, matrix) -> "Form":
        """Left multiplication by a matrix of functions."""
        a = _matrix(matrix)
        return Form({b: a * m for b, m in self.parts.items()}, (a.shape[0], self.shape[1]))

    def rmul(self, matrix) -> "Form":
        a = _matrix(matrix)
        return Form({b: m * a for b, m in self.parts.items()}, (self.shape[0], a.shape[1]))

    def trace(self) -> "Form":
        return Form({b: [[m.trace()]] for b, m in self.parts.items()}, (1, 1))

    def transpose(self) -> "Form":
        return Form({b: m.T for b, m in self.parts.items()}, self.shape[::-1])

    def applyfunc(self, fn) -> "Form":
        return Form({b: m.applyfunc(fn) for b, m in self.parts.items()}, self.shape)

    def simplify(self) -> "Form":
        return self.applyfunc(ex.simplify)

    def is_zero(self) -> bool:
        return all(ex.is_zero(e) for m in self.parts.values() for e in m)

    def equals(self, other: "Form") -> bool:
        """Exact symbolic equality (after rational normalization)."""
        return (self - other).is_zero()

    def free_of_zb(self) -> bool:
        return all(ZB not in m.free_symbols for m in self.parts.values())

    # numerics ---------------------------------------------------------
    def evaluate(self, points) -> dict:
        """Coefficient arrays of shape ``(npoints, rows, cols)`` per basis element."""
        p = np.atleast_1d(np.asarray(points, dtype=complex))
        out = {}
        for b, m in self.parts.items():
            arr = np.empty((p.size,) + self.shape, dtype=complex)
            for r in range(self.shape[0]):
                for c in range(self.shape[1]):
                    arr[:, r, c] = ex.evaluate(m[r, c], p)
            out[b] = arr
        return out

    def max_abs(self, points) -> float:
        vals = self.evaluate(points)
        if not vals:
            return 0.0
        return float(max(np.max(np.abs(v)) for v in vals.values()))


# operators ------------------------------------------------------------


def d_function(e) -> Form:
    dz, dzb = ex.wirtinger(e)
    return Form.one_form(dz=dz, dzb=dzb)


def dlog(e) -> Form:
    """``de/e`` for a nonvanishing scalar expression."""
    e = ex.as_expr(e)
    if e == 0:
        raise DomainError("dlog of the zero function")
    dz, dzb = ex.wirtinger(e)
    return Form({"dz": ex.simplify(dz / e), "dzb": ex.simplify(dzb / e)})


def _diff_matrix(m, var):
    return m.applyfunc(lambda e: sp.diff(e, var))


def del_(f: Form) -> Form:
    out = {}
    for b, m in f.parts.items():
        if b == "1":
            out["dz"] = _diff_matrix(m, Z)
        elif b == "dzb":
            out["dzdzb"] = out.get("dzdzb", sp.zeros(*f.shape)) + _diff_matrix(m, Z)
    return Form(out, f.shape)


def delbar(f: Form) -> Form:
    out = {}
    for b, m in f.parts.items():
        if b == "1":
            out["dzb"] = _diff_matrix(m, ZB)
        elif b == "dz":
            # dzb ^ dz = -dz ^ dzb
            out["dzdzb"] = out.get("dzdzb", sp.zeros(*f.shape)) - _diff_matrix(m, ZB)
    return Form(out, f.shape)


def d(f: Form) -> Form:
    return del_(f) + delbar(f)


def wedge(f: Form, g: Form) -> Form:
    """Exterior product; matrix coefficients multiply in the given order."""
    if f.shape[1] != g.shape[0]:
        raise BidegreeError(f"cannot compose coefficient shapes {f.shape} and {g.shape}")
    shape = (f.shape[0], g.shape[1])
    out = {}
    for bf, mf in f.parts.items():
        for bg, mg in g.parts.items():
            key = (bf, bg)
            if key not in _WEDGE:
                raise BidegreeError(f"wedge of {bf} and {bg} exceeds bidegree (1,1)")
            target, sign = _WEDGE[key]
            if target is None:
                continue
            term = sign * (mf * mg)
            out[target] = out[target] + term if target in out else term
    return Form(out, shape)


def pullback(f: Form, t) -> Form:
    """Pull back along the holomorphic substitution ``z -> t(z)``."""
    t = ex.as_expr(t)
    tp = sp.diff(t, Z)
    tpb = ex.conj(tp)
    scale = {"1": 1, "dz": tp, "dzb": tpb, "dzdzb": tp * tpb}
    out = {}
    for b, m in f.parts.items():
        out[b] = m.applyfunc(lambda e: ex.compose(e, t)) * scale[b]
    return Form(out, f.shape)


# covers ---------------------------------------------------------------


@dataclass(eq=False)
class Cover:
    """Finite ordered cover by one-dimensional charts.

    ``transitions[(i, j)]`` expresses the chart-``i`` coordinate as a function
    of the chart-``j`` coordinate (written in ``z``); both directions of every
    nonempty overlap must be given.  Sample grids are deterministic in
    ``seed``.
    """

    name: str
    n_charts: int
    transitions: Mapping[tuple, sp.Expr]
    seed: int = 0
    n_points: int = 200
    radius: float = 3.0
    max_coordinate: float = 10.0
    singular: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        self.transitions = {tuple(k): ex.as_expr(v) for k, v in self.transitions.items()}
        self._grids = {}

    def transition(self, i: int, j: int) -> sp.Expr:
        if i == j:
            return Z
        return self.transitions[(i, j)]

    def overlaps(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.transitions

    @cached_property
    def charts(self) -> tuple:
        return tuple(range(self.n_charts))

    def keys(self, degree: int) -> list:
        """Strictly increasing ``degree+1``-tuples of charts with nonempty overlap."""
        from itertools import combinations

        out = []
        for key in combinations(self.charts, degree + 1):
            if all(self.overlaps(a, b) for a, b in combinations(key, 2)):
                out.append(key)
        return out

    def points(self, key, chart=None) -> np.ndarray:
        """Sample grid of the overlap ``key``, in the coordinate of ``chart``.

        The grid is drawn in the first chart of ``key`` and mapped across when
        another chart is requested.
        """
        key = tuple(sorted(key))
        base = key[0]
        if key not in self._grids:
            self._grids[key] = self._sample(key)
        pts = self._grids[key]
        if chart is None or chart == base:
            return pts
        return ex.evaluate(self.transition(chart, base), pts)

    def _sample(self, key):
        base = key[0]
        rng = np.random.default_rng([self.seed, *key])
        kept = []
        while len(kept) < self.n_points:
            r = self.radius * np.sqrt(rng.random(4 * self.n_points))
            theta = 2 * np.pi * rng.random(4 * self.n_points)
            cand = r * np.exp(1j * theta)
            ok = np.ones(cand.shape, dtype=bool)
            for other in key:
                for s in self.singular.get(other, ()):
                    if other == base:
                        ok &= np.abs(cand - s) > 0.05
                if other == base:
                    continue
                with np.errstate(all="ignore"):
                    mapped = np.asarray(
                        ex.evaluate(self.transition(other, base), cand, check=False), dtype=complex
                    )
                ok &= np.isfinite(mapped) & (np.abs(mapped) <= self.max_coordinate)
                for s in self.singular.get(other, ()):
                    ok &= np.abs(mapped - s) > 0.05
            kept.extend(cand[ok].tolist())
        return np.asarray(kept[: self.n_points], dtype=complex)

    def check_transitions(self) -> float:
        """Max deviation of ``T_ij(T_jk(z)) - T_ik(z)`` on triple-overlap grids."""
        worst = 0.0
        for key in self.keys(2) + self.keys(1):
            for i in key:
                for j in key:
                    for k in key:
                        pts = self.points(key, k)
                        lhs = ex.evaluate(self.transition(i, j), ex.evaluate(self.transition(j, k), pts))
                        rhs = ex.evaluate(self.transition(i, k), pts)
                        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs)))))
        return worst


def sample_equal(a: Form, b: Form, cover: Cover, overlap: tuple, tol: float) -> bool:
    """Compare ``a`` (on chart ``overlap[0]``) with ``b`` (on chart ``overlap[1]``).

    ``b`` is pulled back to the first chart and the coefficient arrays are
    compared on the overlap grid.
    """
    i, j = overlap
    pulled = pullback(b, cover.transition(j, i))
    pts = cover.points((i, j), i)
    return (a - pulled).max_abs(pts) <= tol


def conjugation_symmetric(f: Form, points, tol: float) -> bool:
    """Sampled check that ``f`` is fixed by complex conjugation of the chart.

    With the conventions of this module every coefficient ``g`` must satisfy
    ``g(z) = conj(g(conj z))``; the grid is closed under conjugation first.
    """
    pts = np.asarray(points, dtype=complex)
    pts = np.concatenate([pts, np.conj(pts)])
    a = f.evaluate(pts)
    b = f.evaluate(np.conj(pts))
    for basis in a:
        if np.max(np.abs(a[basis] - np.conj(b[basis]))) > tol:
            return False
    return True


def standard_p1_cover(seed: int = 0, n_points: int = 200) -> Cover:
    """The two-chart cover of P^1 with ``w = 1/z`` on the overlap."""
    return Cover(
        name="p1",
        n_charts=2,
        transitions={(0, 1): 1 / Z, (1, 0): 1 / Z},
        seed=seed,
        n_points=n_points,
    )


def three_chart_p1_cover(seed: int = 0, n_points: int = 200) -> Cover:
    """P^1 covered by the complements of infinity, 0 and 1.

    Coordinates: ``z`` on chart 0, ``w = 1/z`` on chart 1, ``u = 1/(z-1)`` on
    chart 2.
    """
    return Cover(
        name="p1-3chart",
        n_charts=3,
        transitions={
            (0, 1): 1 / Z,
            (1, 0): 1 / Z,
            (0, 2): 1 + 1 / Z,  # z = 1 + 1/u
            (2, 0): 1 / (Z - 1),  # u = 1/(z-1)
            (1, 2): Z / (Z + 1),  # w = u/(u+1)
            (2, 1): Z / (1 - Z),  # u = w/(1-w)
        },
        seed=seed,
        n_points=n_points,
    )
