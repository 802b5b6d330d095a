"""Alternating Cech cochains and the cone-cocycle model of arithmetic extensions.

A class in the arithmetic extension group is represented by a pair
``(alpha, beta)``: ``alpha`` a holomorphic 1-cochain and ``beta`` a smooth
0-cochain with ``delta(alpha) = 0`` and ``alpha_ij = beta_i - beta_j`` on
overlaps.  Pairs of the form ``(-delta(gamma), gamma)`` are coboundaries.

Every coefficient at a key ``(i0, ..., ip)`` is written in the coordinate
(and, for End(E)-valued data, the frame) of the first chart ``i0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import sympy as sp

from . import expr as ex
from . import sexpr
from .errors import CoverMismatch, GluingError
from .forms import BASIS, Cover, Form, delbar, pullback

DEFAULT_TOL = 1e-10
RESIDUE_NODES = 2**10


@dataclass(eq=False)
class CoefficientSystem:
    """How coefficients move between charts.

    Scalar systems (``frames is None``) only change coordinates.  For
    End(E)-valued coefficients ``frames[(i, j)]`` is the transition matrix
    ``f_ij`` (so that ``f_i = f_j f_ij``) written in the chart-``i``
    coordinate, for every ordered overlap.
    """

    cover: Cover
    label: str = "Omega1"
    frames: Mapping[tuple, sp.ImmutableMatrix] | None = None
    rank: int = 1

    def transport(self, form: Form, src: int, dst: int) -> Form:
        """Rewrite a coefficient given on chart ``src`` in chart ``dst`` terms."""
        if src == dst:
            return form
        moved = pullback(form, self.cover.transition(src, dst))
        if self.frames is None:
            return moved
        f = self.frames[(dst, src)]
        return moved.lmul(f.inv()).rmul(f)

    @property
    def shape(self):
        return (self.rank, self.rank) if self.frames is not None else (1, 1)

    def compatible(self, other: "CoefficientSystem") -> bool:
        return self is other or (
            self.cover is other.cover and self.label == other.label and self.frames is None and other.frames is None
        )


def scalar_system(cover: Cover, label: str = "Omega1") -> CoefficientSystem:
    return CoefficientSystem(cover, label)


@dataclass(eq=False)
class Cochain:
    system: CoefficientSystem
    degree: int
    values: Mapping[tuple, Form] = field(default_factory=dict)
    holomorphic: bool = False

    def __post_init__(self):
        self.values = {tuple(k): v for k, v in self.values.items()}
        for k in self.values:
            if list(k) != sorted(set(k)) or len(k) != self.degree + 1:
                raise ValueError(f"key {k} is not a strictly increasing {self.degree + 1}-tuple")

    def __getitem__(self, key) -> Form:
        key = tuple(key)
        return self.values.get(key, Form.zero(self.system.shape))

    @property
    def keys(self):
        return self.system.cover.keys(self.degree)

    def _check(self, other):
        if not self.system.compatible(other.system) or self.degree != other.degree:
            raise CoverMismatch("cochains live on different covers or coefficient systems")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(
            self.system,
            self.degree,
            {k: self[k] + other[k] for k in self.keys},
            self.holomorphic and other.holomorphic,
        )

    def __neg__(self) -> "Cochain":
        return Cochain(self.system, self.degree, {k: -v for k, v in self.values.items()}, self.holomorphic)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "Cochain":
        return Cochain(self.system, self.degree, {key: v * k for key, v in self.values.items()}, self.holomorphic)

    def map(self, fn) -> "Cochain":
        return Cochain(self.system, self.degree, {k: fn(v) for k, v in self.values.items()}, self.holomorphic)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def equals(self, other: "Cochain") -> bool:
        self._check(other)
        return all(self[k].equals(other[k]) for k in self.keys)

    def max_abs(self) -> float:
        """Largest sampled coefficient over all overlap grids."""
        worst = 0.0
        for k in self.keys:
            worst = max(worst, self[k].max_abs(self.system.cover.points(k)))
        return worst


def zero_cochain(system: CoefficientSystem, degree: int, holomorphic: bool = True) -> Cochain:
    return Cochain(system, degree, {}, holomorphic)


def delta(c: Cochain) -> Cochain:
    """Alternating Cech differential ``sum_k (-1)^k c(i_0..^i_k..i_{p+1})``."""
    out = {}
    system = c.system
    for key in system.cover.keys(c.degree + 1):
        total = Form.zero(system.shape)
        for k in range(len(key)):
            face = key[:k] + key[k + 1 :]
            term = system.transport(c[face], face[0], key[0])
            total = total + term if k % 2 == 0 else total - term
        out[key] = total
    return Cochain(system, c.degree + 1, out, c.holomorphic)


@dataclass(eq=False)
class CocycleCheck:
    ok: bool
    cocycle_residual: float
    gluing_residual: float

    def as_dict(self):
        return {
            "ok": self.ok,
            "cocycle_residual": self.cocycle_residual,
            "gluing_residual": self.gluing_residual,
        }


@dataclass(eq=False)
class ConeCocycle:
    alpha: Cochain
    beta: Cochain
    tag: str = "Omega1"

    def __post_init__(self):
        if self.alpha.degree != 1 or self.beta.degree != 0:
            raise ValueError("alpha must be a 1-cochain and beta a 0-cochain")
        if not self.alpha.system.compatible(self.beta.system):
            raise CoverMismatch("alpha and beta use different coefficient systems")

    @property
    def system(self) -> CoefficientSystem:
        return self.alpha.system

    @property
    def cover(self) -> Cover:
        return self.system.cover

    def equals(self, other: "ConeCocycle") -> bool:
        """Exact componentwise equality of representatives."""
        return self.alpha.equals(other.alpha) and self.beta.equals(other.beta)

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()

    def simplify(self) -> "ConeCocycle":
        return ConeCocycle(self.alpha.map(Form.simplify), self.beta.map(Form.simplify), self.tag)

    def to_json(self, check: CocycleCheck | None = None) -> dict:
        def enc(form: Form):
            return {
                b: [[sexpr.dumps(e) for e in row] for row in form.coeff(b).tolist()]
                for b in BASIS
                if b in form.parts
            }

        doc = {
            "cover": self.cover.name,
            "tag": self.tag,
            "alpha": {",".join(map(str, k)): enc(self.alpha[k]) for k in self.alpha.keys},
            "beta": {",".join(map(str, k)): enc(self.beta[k]) for k in self.beta.keys},
        }
        if check is not None:
            doc["residuals"] = check.as_dict()
        return doc


def cone_cocycle_from_json(doc: Mapping, system: CoefficientSystem) -> ConeCocycle:
    def dec(parts):
        return Form({b: [[sexpr.parse(e) for e in row] for row in m] for b, m in parts.items()}, system.shape)

    alpha = {tuple(int(x) for x in k.split(",")): dec(v) for k, v in doc["alpha"].items()}
    beta = {tuple(int(x) for x in k.split(",")): dec(v) for k, v in doc["beta"].items()}
    return ConeCocycle(Cochain(system, 1, alpha, True), Cochain(system, 0, beta), doc.get("tag", system.label))


def dumps_cocycle(c: ConeCocycle, check: CocycleCheck | None = None) -> str:
    return json.dumps(c.to_json(check), sort_keys=True)


def is_cone_cocycle(c: ConeCocycle, tol: float = DEFAULT_TOL) -> CocycleCheck:
    """Sample ``delta(alpha)`` and ``alpha_ij - (beta_i - beta_j)`` on every overlap grid."""
    cover = c.cover
    da = delta(c.alpha)
    cocycle_res = 0.0
    for key in cover.keys(2):
        cocycle_res = max(cocycle_res, da[key].max_abs(cover.points(key)))
    glue_res = 0.0
    for i, j in cover.keys(1):
        diff = c.alpha[(i, j)] - (c.beta[(i,)] - c.system.transport(c.beta[(j,)], j, i))
        glue_res = max(glue_res, diff.max_abs(cover.points((i, j))))
    return CocycleCheck(cocycle_res <= tol and glue_res <= tol, cocycle_res, glue_res)


def zero_cocycle(system: CoefficientSystem, tag: str | None = None) -> ConeCocycle:
    return ConeCocycle(zero_cochain(system, 1), zero_cochain(system, 0, False), tag or system.label)


# group law ------------------------------------------------------------


def _same(a: ConeCocycle, b: ConeCocycle):
    if not a.system.compatible(b.system) or a.tag != b.tag:
        raise CoverMismatch("cocycles live on different covers or coefficient systems")


def add(a: ConeCocycle, b: ConeCocycle) -> ConeCocycle:
    """Baer sum, realized componentwise on representatives."""
    _same(a, b)
    return ConeCocycle(a.alpha + b.alpha, a.beta + b.beta, a.tag)


def neg(a: ConeCocycle) -> ConeCocycle:
    return ConeCocycle(-a.alpha, -a.beta, a.tag)


def zscale(k: int, a: ConeCocycle) -> ConeCocycle:
    if int(k) != k:
        raise ValueError("zscale takes an integer multiplier")
    return ConeCocycle(a.alpha.scale(int(k)), a.beta.scale(int(k)), a.tag)


def coboundary(gamma: Cochain) -> ConeCocycle:
    """The trivial class ``(-delta(gamma), gamma)`` of a holomorphic 0-cochain."""
    if gamma.degree != 0:
        raise ValueError("coboundary takes a 0-cochain")
    smooth = Cochain(gamma.system, 0, dict(gamma.values), False)
    return ConeCocycle(-delta(gamma), smooth, gamma.system.label)


# maps of the basic exact sequence -------------------------------------


def map_nu(c: ConeCocycle) -> Cochain:
    """Forget the splitting: the underlying algebraic extension class."""
    return c.alpha


def map_b(section: Cochain) -> ConeCocycle:
    """A global smooth section ``T`` gives the class ``(0, (T|U_i)_i)``."""
    if section.degree != 0:
        raise ValueError("map_b takes a global section as a 0-cochain")
    smooth = Cochain(section.system, 0, dict(section.values), False)
    return ConeCocycle(zero_cochain(section.system, 1), smooth, section.system.label)


def map_iota(section: Cochain) -> Cochain:
    """View a global algebraic section as a smooth one."""
    return Cochain(section.system, 0, dict(section.values), False)


def global_section(system: CoefficientSystem, forms: Mapping[int, Form], holomorphic: bool = False) -> Cochain:
    return Cochain(system, 0, {(i,): f for i, f in forms.items()}, holomorphic)


def gluing_residual(section: Cochain) -> float:
    """How far a 0-cochain is from gluing to a global section (sampled)."""
    return delta(section).max_abs()


def map_psi(c: ConeCocycle, tol: float = DEFAULT_TOL) -> tuple[dict, float]:
    """Second fundamental form: chartwise ``delbar(beta_i)``.

    Returns the chart forms (bidegree (1,1), i.e. the (0,1)-form with
    Omega^1 coefficients under ``(f dz) ^ dzbar <-> f dz^dzbar``) and the
    sampled gluing residual.
    """
    system = c.system
    forms = {i: delbar(c.beta[(i,)]) for i in system.cover.charts}
    residual = 0.0
    for i, j in system.cover.keys(1):
        diff = forms[i] - system.transport(forms[j], j, i)
        residual = max(residual, diff.max_abs(system.cover.points((i, j))))
    if residual > tol:
        raise GluingError("delbar(beta) does not glue", residual)
    return forms, residual


def residue_degree(c: ConeCocycle, nodes: int = RESIDUE_NODES) -> complex:
    """``(1/2 pi i) * contour integral of alpha_01`` over ``|z| = 1``.

    Only for the two-chart cover of P^1.  The orientation is the one making
    ``deg O(1) = +1``.  Matrix-valued classes are traced first.
    """
    cover = c.cover
    if cover.n_charts != 2:
        raise ValueError("residue_degree needs the two-chart cover of P^1")
    a = c.alpha[(0, 1)]
    if a.shape != (1, 1):
        a = a.trace()
    g = a.scalar("dz")
    z = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.asarray(ex.evaluate(g, z)) if g != 0 else np.zeros(nodes, dtype=complex)
    # dz = i z dtheta, so (1/2 pi i) * sum g(z) i z (2 pi / N) = mean(g z)
    return complex(np.mean(vals * z))
