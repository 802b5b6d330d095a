"""Arithmetic Atiyah and first Chern cocycles of hermitian bundles on curves.

Conventions (see docs/conventions.md):

* ``f_ij = f_j^{-1} f_i`` so ``f_i = f_j f_ij``; ``f_ij`` is written in the
  chart-``i`` coordinate.
* ``h_i[k, l] = h(f_i e_l, f_i e_k)``, hence ``h_i = f_ij^* h_j f_ij``.
* The Chern connection has matrix ``theta_i = h_i^{-1} dh_i`` (type (1,0))
  in the frame ``f_i``; a connection ``nabla`` gives the jet splitting
  ``s(f) = [f, -nabla f]``.
* The Atiyah cocycle is ``alpha_ij = -f_ij^{-1} df_ij`` and
  ``beta_i = -theta_i``, both in the frame of the first chart.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping

import numpy as np
import sympy as sp

from . import expr as ex
from . import sexpr
from .cech import (
    DEFAULT_TOL,
    Cochain,
    CoefficientSystem,
    ConeCocycle,
    is_cone_cocycle,
    map_psi,
    residue_degree,
    scalar_system,
)
from .errors import CoverMismatch, GluingError, IdentityViolation, QuadratureWarning, RankError
from .forms import Cover, Form, delbar, dlog, pullback, standard_p1_cover, three_chart_p1_cover, wedge
from .expr import Z

END_TAG = "End(E)*Omega1"


def adjoint(m: sp.MatrixBase) -> sp.ImmutableMatrix:
    return sp.ImmutableMatrix(m.T.applyfunc(ex.conj))


def _compose_matrix(m, t):
    return sp.ImmutableMatrix(m.applyfunc(lambda e: ex.compose(e, t)))


def _eval_matrix(m, pts) -> np.ndarray:
    out = np.empty((len(pts),) + m.shape, dtype=complex)
    for r in range(m.shape[0]):
        for c in range(m.shape[1]):
            out[:, r, c] = ex.evaluate(m[r, c], pts)
    return out


def _simplify_matrix(m):
    return sp.ImmutableMatrix(m.applyfunc(ex.simplify))


def _log_derivative(h: sp.MatrixBase) -> sp.ImmutableMatrix:
    """``h^{-1} dh/dz`` for a matrix of rational functions.

    With ``h = H/D`` (``H`` polynomial, ``D`` a common denominator) this is
    ``adj(H) dH / det H - (dD/D) I``, so all cancellation is polynomial.
    """
    num_den = [sp.fraction(sp.cancel(sp.together(e))) for e in h]
    D = sp.lcm_list([q for _, q in num_den])
    H = sp.Matrix(*h.shape, [sp.expand(p * sp.cancel(D / q)) for p, q in num_den])
    det = sp.expand(H.det())
    dD = sp.expand(sp.diff(D, Z))
    top = H.adjugate() * H.applyfunc(lambda e: sp.diff(e, Z))
    n = h.shape[0]
    return sp.ImmutableMatrix(
        n, n, lambda r, c: sp.cancel((sp.expand(top[r, c]) * D - (det * dD if r == c else 0)) / (det * D))
    )


# jets -----------------------------------------------------------------


@dataclass(frozen=True)
class Jet:
    """A local section ``[f, omega]`` of ``P^1(E) = E + E*Omega^1`` in a frame.

    ``value`` is a column of functions and ``differential`` a column-valued
    (1,0)-form.
    """

    value: sp.ImmutableMatrix
    differential: Form

    def scale(self, lam) -> "Jet":
        """Left module structure ``lam.[f, w] = [lam f, lam w - f (x) d lam]``."""
        lam = ex.as_expr(lam)
        dlam = sp.diff(lam, Z)
        return Jet(
            sp.ImmutableMatrix(self.value * lam),
            self.differential * lam - Form.one_form(dz=self.value * dlam),
        )

    def __add__(self, other):
        return Jet(sp.ImmutableMatrix(self.value + other.value), self.differential + other.differential)

    def __sub__(self, other):
        return Jet(sp.ImmutableMatrix(self.value - other.value), self.differential - other.differential)

    def equals(self, other: "Jet") -> bool:
        return all(ex.is_zero(e) for e in (self.value - other.value)) and self.differential.equals(other.differential)


def splitting(theta: sp.MatrixBase) -> Callable[[sp.MatrixBase], Jet]:
    """Jet splitting ``f -> [f, -nabla^{1,0} f]`` of ``nabla = d + theta dz``."""
    theta = sp.ImmutableMatrix(theta)

    def s(v):
        v = sp.ImmutableMatrix(v)
        nabla = v.applyfunc(lambda e: sp.diff(e, Z)) + theta * v
        return Jet(v, -Form.one_form(dz=nabla))

    return s


def splitting_difference(theta_a, theta_b, rank: int) -> Form:
    """The End(E)*Omega^1 matrix of ``s_a - s_b`` (an O-linear map into E*Omega^1)."""
    sa, sb = splitting(theta_a), splitting(theta_b)
    cols = []
    for k in range(rank):
        e_k = sp.ImmutableMatrix([[1 if r == k else 0] for r in range(rank)])
        jet = sa(e_k) - sb(e_k)
        if not all(ex.is_zero(x) for x in jet.value):
            raise AssertionError("difference of splittings must land in E*Omega^1")
        cols.append(jet.differential.coeff("dz"))
    return Form.one_form(dz=_simplify_matrix(sp.Matrix.hstack(*cols)))


# bundle data ----------------------------------------------------------


@dataclass(eq=False)
class BundleCheck:
    cocycle_residual: float
    metric_residual: float
    min_eigenvalue: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.cocycle_residual <= self.tol and self.metric_residual <= self.tol and self.min_eigenvalue > 0

    def as_dict(self):
        return {
            "ok": self.ok,
            "cocycle_residual": self.cocycle_residual,
            "metric_residual": self.metric_residual,
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass(eq=False)
class HermitianBundleData:
    """Holomorphic transition matrices and chartwise Gram matrices.

    ``transitions[(i, j)]`` for ``i < j`` is ``f_ij`` in the chart-``i``
    coordinate; the reverse directions are derived.
    """

    cover: Cover
    rank: int
    transitions: Mapping[tuple, sp.MatrixBase]
    metrics: Mapping[int, sp.MatrixBase]
    name: str = ""

    def __post_init__(self):
        def mat(v):
            m = sp.ImmutableMatrix(v) if isinstance(v, (sp.MatrixBase, list, tuple)) else sp.ImmutableMatrix([[v]])
            if m.shape != (self.rank, self.rank):
                raise RankError(f"expected {self.rank}x{self.rank} matrices, got {m.shape}")
            return m

        self.transitions = {tuple(k): mat(v) for k, v in self.transitions.items()}
        self.metrics = {int(k): mat(v) for k, v in self.metrics.items()}
        for i, j in self.transitions:
            if not i < j:
                raise ValueError("give transitions f_ij for i < j only")

    def frame(self, i: int, j: int) -> sp.ImmutableMatrix:
        """``f_ij`` in the chart-``i`` coordinate, for either order."""
        return self.frames[(i, j)]

    @cached_property
    def frames(self) -> dict:
        out = {}
        for i in self.cover.charts:
            out[(i, i)] = sp.ImmutableMatrix.eye(self.rank)
        for (i, j), f in self.transitions.items():
            out[(i, j)] = f
            inv = _simplify_matrix(f.inv())
            out[(j, i)] = _simplify_matrix(_compose_matrix(inv, self.cover.transition(i, j)))
        return out

    @cached_property
    def system(self) -> CoefficientSystem:
        frames = {k: v for k, v in self.frames.items() if k[0] != k[1]}
        return CoefficientSystem(self.cover, END_TAG, frames, self.rank)

    def theta(self, i: int) -> sp.ImmutableMatrix:
        """Chern connection matrix ``h_i^{-1} d h_i`` (coefficient of dz)."""
        return self._thetas[i]

    @cached_property
    def _thetas(self) -> dict:
        out = {}
        for i, h in self.metrics.items():
            if self.rank == 1:
                out[i] = _simplify_matrix(sp.ImmutableMatrix([[sp.diff(h[0, 0], Z) / h[0, 0]]]))
            else:
                out[i] = _log_derivative(h)
        return out

    def validate(self, tol: float = DEFAULT_TOL) -> BundleCheck:
        cover = self.cover
        coc = 0.0
        for i, j, k in cover.keys(2):
            pts = cover.points((i, j, k), i)
            f_jk = _compose_matrix(self.frame(j, k), cover.transition(j, i))
            lhs = _eval_matrix(self.frame(i, k), pts)
            rhs = _eval_matrix(f_jk, pts) @ _eval_matrix(self.frame(i, j), pts)
            coc = max(coc, float(np.max(np.abs(lhs - rhs))))
        met = 0.0
        for i, j in cover.keys(1):
            for a, b in ((i, j), (j, i)):
                pts = cover.points((i, j), a)
                f = _eval_matrix(self.frame(a, b), pts)
                hb = _eval_matrix(_compose_matrix(self.metrics[b], cover.transition(b, a)), pts)
                ha = _eval_matrix(self.metrics[a], pts)
                pulled = np.conj(np.swapaxes(f, 1, 2)) @ hb @ f
                scale = np.maximum(1.0, np.abs(ha))
                met = max(met, float(np.max(np.abs(ha - pulled) / scale)))
        min_eig = np.inf
        for i in cover.charts:
            pts = np.concatenate([cover.points((i,))] + [cover.points(k, i) for k in cover.keys(1) if i in k])
            h = _eval_matrix(self.metrics[i], pts)
            herm = float(np.max(np.abs(h - np.conj(np.swapaxes(h, 1, 2)))))
            if herm > tol * max(1.0, float(np.max(np.abs(h)))):
                min_eig = min(min_eig, -herm)
            min_eig = min(min_eig, float(np.min(np.linalg.eigvalsh(0.5 * (h + np.conj(np.swapaxes(h, 1, 2)))))))
        return BundleCheck(coc, met, float(min_eig), tol)


# cocycles -------------------------------------------------------------


def atiyah_cocycle(data: HermitianBundleData) -> ConeCocycle:
    """Cocycle ``((-dlog f_ij), (-d log h_i))`` of the arithmetic Atiyah class.

    Both components are computed as differences of jet splittings: the
    local holomorphic connections ``nabla_i f_i = 0`` against each other for
    ``alpha`` and the Chern connection against ``nabla_i`` for ``beta``.
    """
    system = data.system
    n = data.rank
    zero = sp.zeros(n, n)
    alpha = {}
    for i, j in data.cover.keys(1):
        f = data.frame(i, j)
        # nabla_j written in frame i has matrix f_ij^{-1} df_ij
        conn_j = f.inv() * f.applyfunc(lambda e: sp.diff(e, Z))
        alpha[(i, j)] = splitting_difference(conn_j, zero, n)
    beta = {(i,): splitting_difference(data.theta(i), zero, n) for i in data.cover.charts}
    return ConeCocycle(Cochain(system, 1, alpha, True), Cochain(system, 0, beta), END_TAG)


def connection_cocycle(data: HermitianBundleData, thetas: Mapping[int, sp.MatrixBase]) -> ConeCocycle:
    """Atiyah cocycle of ``E`` with the splitting of an arbitrary connection.

    ``thetas[i]`` is the dz-coefficient of the (1,0) connection matrix in the
    frame ``f_i``.  Gluing of the connection is checked by is_cone_cocycle.
    """
    base = atiyah_cocycle(data)
    n = data.rank
    beta = {(i,): splitting_difference(thetas[i], sp.zeros(n, n), n) for i in data.cover.charts}
    return ConeCocycle(base.alpha, Cochain(data.system, 0, beta), END_TAG)


def c1_hodge(data: HermitianBundleData) -> ConeCocycle:
    """First Chern class cocycle ``((-dlog f_ij), (-d log |l_i|^2))`` of a line bundle."""
    if data.rank != 1:
        raise RankError("c1_hodge needs a line bundle; use trace_reduce for higher rank")
    system = scalar_system(data.cover)
    alpha = {}
    for i, j in data.cover.keys(1):
        alpha[(i, j)] = -_holomorphic_part(dlog(data.frame(i, j)[0, 0]))
    beta = {}
    for i in data.cover.charts:
        h = data.metrics[i][0, 0]
        beta[(i,)] = Form.one_form(dz=-ex.simplify(sp.diff(h, Z) / h))
    return ConeCocycle(Cochain(system, 1, alpha, True), Cochain(system, 0, beta), "Omega1")


def _holomorphic_part(f: Form) -> Form:
    return Form.one_form(dz=f.coeff("dz"), dzb=f.coeff("dzb"))


def trace_reduce(c: ConeCocycle) -> ConeCocycle:
    """Componentwise trace End(E)*Omega^1 -> Omega^1."""
    system = scalar_system(c.cover)
    alpha = {k: v.trace().simplify() for k, v in c.alpha.values.items()}
    beta = {k: v.trace().simplify() for k, v in c.beta.values.items()}
    return ConeCocycle(Cochain(system, 1, alpha, True), Cochain(system, 0, beta), "Omega1")


def determinant(data: HermitianBundleData) -> HermitianBundleData:
    return HermitianBundleData(
        data.cover,
        1,
        {k: [[ex.simplify(f.det())]] for k, f in data.transitions.items()},
        {i: [[ex.simplify(h.det())]] for i, h in data.metrics.items()},
        name=f"det({data.name})",
    )


def curvature(data: HermitianBundleData, tol: float = DEFAULT_TOL) -> tuple[dict, float]:
    """Chartwise curvature ``delbar(theta_i) + theta_i ^ theta_i`` and its gluing residual."""
    forms = {}
    for i in data.cover.charts:
        th = Form.one_form(dz=data.theta(i))
        forms[i] = delbar(th) + wedge(th, th)
    residual = 0.0
    for i, j in data.cover.keys(1):
        diff = forms[i] - data.system.transport(forms[j], j, i)
        residual = max(residual, diff.max_abs(data.cover.points((i, j))))
    if residual > tol:
        raise GluingError("curvature does not glue", residual)
    return forms, residual


def _chart_points(cover: Cover, i: int) -> np.ndarray:
    return np.concatenate([cover.points((i,))] + [cover.points(k, i) for k in cover.keys(1) if i in k])


def verify_curvature_identity(data: HermitianBundleData, tol: float = DEFAULT_TOL) -> dict:
    """Check ``Psi(at(E, h)) = -Theta`` on every chart and overlap grid."""
    psi, psi_glue = map_psi(atiyah_cocycle(data), tol)
    theta, theta_glue = curvature(data, tol)
    residual = 0.0
    for i in data.cover.charts:
        residual = max(residual, (psi[i] + theta[i]).max_abs(_chart_points(data.cover, i)))
    report = {
        "residual": residual,
        "psi_gluing_residual": psi_glue,
        "curvature_gluing_residual": theta_glue,
        "tol": tol,
    }
    if residual > tol:
        raise IdentityViolation("Psi(at) != -curvature", residual)
    return report


# degree by quadrature -------------------------------------------------

INNER, OUTER = 0.8, 1.2
RADIAL_NODES = 96
ANGULAR_NODES = 128


def _psi(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def bump(r) -> np.ndarray:
    """Smooth cutoff: 1 for ``r <= 0.8``, 0 for ``r >= 1.2``."""
    t = (OUTER - np.asarray(r, dtype=float)) / (OUTER - INNER)
    a, b = _psi(t), _psi(1.0 - t)
    return a / (a + b)


def _polar_rule(breaks):
    x, w = np.polynomial.legendre.leggauss(RADIAL_NODES)
    rs, ws = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        rs.append(0.5 * (hi - lo) * x + 0.5 * (hi + lo))
        ws.append(0.5 * (hi - lo) * w)
    r = np.concatenate(rs)
    wr = np.concatenate(ws)
    theta = 2 * np.pi * np.arange(ANGULAR_NODES) / ANGULAR_NODES
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    weights = (wr * r)[:, None] * np.full(ANGULAR_NODES, 2 * np.pi / ANGULAR_NODES)[None, :]
    return rr, rr * np.exp(1j * tt), weights


def _is_standard_p1(cover: Cover) -> bool:
    if cover.n_charts != 2:
        return False
    probe = np.array([0.7 + 0.2j, -1.3 + 0.9j])
    return all(
        np.allclose(ex.evaluate(cover.transition(a, b), probe), 1 / probe) for a, b in ((0, 1), (1, 0))
    )


def chern_density(forms: Mapping[int, Form], chart: int, points) -> np.ndarray:
    """First Chern density w.r.t. ``dx dy``: ``c1 = (i/2pi) tr Theta = (k/pi) dx dy``."""
    theta = forms[chart]
    k = theta.trace().scalar("dzdzb") if theta.shape != (1, 1) else theta.scalar("dzdzb")
    if k == 0:
        return np.zeros(np.shape(points))
    vals = np.asarray(ex.evaluate(k, np.ravel(points))).reshape(np.shape(points))
    return (vals / np.pi).real


def integrate_c1(forms: Mapping[int, Form]) -> float:
    """Integrate ``(i/2pi) tr Theta`` over P^1 with a two-chart partition of unity."""
    _, z0, w0 = _polar_rule([0.0, INNER, OUTER])
    total = np.sum(bump(np.abs(z0)) * chern_density(forms, 0, z0) * w0)
    _, z1, w1 = _polar_rule([0.0, 1 / OUTER, 1 / INNER])
    total += np.sum((1.0 - bump(1.0 / np.abs(z1))) * chern_density(forms, 1, z1) * w1)
    return float(total)


def chern_number(data: HermitianBundleData, tol: float = 1e-6) -> float:
    """Degree of ``det E`` on P^1 by quadrature, cross-checked against the residue."""
    if not _is_standard_p1(data.cover):
        raise ValueError("chern_number integrates over the two-chart cover of P^1 only")
    forms, _ = curvature(data, tol=np.inf)
    value = integrate_c1(forms)
    by_residue = residue_degree(trace_reduce(atiyah_cocycle(data)))
    if abs(value - by_residue.real) > tol or abs(by_residue.imag) > tol:
        warnings.warn(
            f"quadrature degree {value:.9f} disagrees with residue {by_residue:.9f}",
            QuadratureWarning,
            stacklevel=2,
        )
    return value


# functoriality --------------------------------------------------------


def _require_same_cover(a: HermitianBundleData, b: HermitianBundleData):
    if a.cover is not b.cover:
        raise CoverMismatch("bundles are given on different covers")


def tensor(a: HermitianBundleData, b: HermitianBundleData) -> HermitianBundleData:
    _require_same_cover(a, b)
    keys = set(a.transitions) | set(b.transitions)
    trans = {k: sp.kronecker_product(a.frame(*k), b.frame(*k)) for k in keys}
    metrics = {i: sp.kronecker_product(a.metrics[i], b.metrics[i]) for i in a.cover.charts}
    return HermitianBundleData(a.cover, a.rank * b.rank, trans, metrics, name=f"({a.name})x({b.name})")


def dual(a: HermitianBundleData) -> HermitianBundleData:
    """Dual bundle: frames ``(f^{-1})^T`` and metric ``(h^{-1})^T``."""
    trans = {k: _simplify_matrix(f.inv().T) for k, f in a.transitions.items()}
    metrics = {i: _simplify_matrix(h.inv().T) for i, h in a.metrics.items()}
    return HermitianBundleData(a.cover, a.rank, trans, metrics, name=f"dual({a.name})")


def check_self_map(cover: Cover, maps: Mapping[int, sp.Expr], tol: float = DEFAULT_TOL) -> float:
    """Residual of ``T_ij(phi_j(z)) = phi_i(T_ij(z))`` on overlap grids."""
    worst = 0.0
    for i, j in cover.keys(1):
        for a, b in ((i, j), (j, i)):
            pts = cover.points((i, j), b)
            lhs = ex.evaluate(ex.compose(cover.transition(a, b), maps[b]), pts)
            rhs = ex.evaluate(ex.compose(maps[a], cover.transition(a, b)), pts)
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs)))))
    return worst


def pullback_bundle(a: HermitianBundleData, maps: Mapping[int, sp.Expr], tol: float = DEFAULT_TOL) -> HermitianBundleData:
    """Pull back along a self-map given chartwise (chart ``i`` into chart ``i``)."""
    maps = {int(k): ex.as_expr(v) for k, v in maps.items()}
    res = check_self_map(a.cover, maps, tol)
    if res > tol:
        raise CoverMismatch(f"self-map does not respect the cover (residual {res:.3e})")
    trans = {(i, j): _compose_matrix(f, maps[i]) for (i, j), f in a.transitions.items()}
    metrics = {i: _compose_matrix(h, maps[i]) for i, h in a.metrics.items()}
    return HermitianBundleData(a.cover, a.rank, trans, metrics, name=f"pullback({a.name})")


def pullback_cocycle(c: ConeCocycle, maps: Mapping[int, sp.Expr], system: CoefficientSystem | None = None) -> ConeCocycle:
    """Chartwise pullback of representative forms along a cover-preserving self-map."""
    system = system or c.system
    alpha = {k: pullback(v, maps[k[0]]) for k, v in c.alpha.values.items()}
    beta = {k: pullback(v, maps[k[0]]) for k, v in c.beta.values.items()}
    return ConeCocycle(Cochain(system, 1, alpha, True), Cochain(system, 0, beta), c.tag)


def check_tensor_law(a: HermitianBundleData, b: HermitianBundleData) -> bool:
    """``c1(L (x) M) = c1(L) + c1(M)`` exactly at representative level."""
    from .cech import add

    return c1_hodge(tensor(a, b)).equals(add(c1_hodge(a), c1_hodge(b)))


def check_dual_law(a: HermitianBundleData) -> bool:
    from .cech import neg

    return c1_hodge(dual(a)).equals(neg(c1_hodge(a)))


def check_pullback_law(a: HermitianBundleData, maps: Mapping[int, sp.Expr]) -> bool:
    maps = {int(k): ex.as_expr(v) for k, v in maps.items()}
    lhs = c1_hodge(pullback_bundle(a, maps))
    rhs = pullback_cocycle(c1_hodge(a), maps, lhs.system)
    return lhs.equals(rhs)


def metric_rescaling(cover: Cover, f: Mapping[int, sp.Expr]) -> HermitianBundleData:
    """Trivial line bundle with ``|1|^2 = exp(f)``; ``f`` given chartwise."""
    trans = {k: [[1]] for k in cover.keys(1)}
    return HermitianBundleData(cover, 1, trans, {i: [[sp.exp(ex.as_expr(f[i]))]] for i in cover.charts}, name="O(exp f)")


def check_cocycle(data: HermitianBundleData, tol: float = DEFAULT_TOL):
    """Convenience: build the Atiyah cocycle and run is_cone_cocycle on it."""
    return is_cone_cocycle(atiyah_cocycle(data), tol)


# scenario I/O ---------------------------------------------------------

COVERS = {"p1": standard_p1_cover, "p1-3chart": three_chart_p1_cover}


def make_cover(name: str, seed: int = 0, n_points: int = 200) -> Cover:
    try:
        factory = COVERS[name]
    except KeyError:
        raise ValueError(f"unknown cover {name!r}; known: {sorted(COVERS)}") from None
    return factory(seed=seed, n_points=n_points)


def bundle_to_json(data: HermitianBundleData) -> dict:
    def enc(m):
        return [[sexpr.dumps(e) for e in row] for row in m.tolist()]

    return {
        "cover": data.cover.name,
        "rank": data.rank,
        "name": data.name,
        "transitions": {f"{i},{j}": enc(f) for (i, j), f in sorted(data.transitions.items())},
        "metrics": {str(i): enc(h) for i, h in sorted(data.metrics.items())},
    }


def bundle_from_json(doc: Mapping, cover: Cover | None = None, seed: int = 0) -> HermitianBundleData:
    """Inverse of bundle_to_json; entries are S-expression strings."""

    def dec(m):
        if isinstance(m, str):
            return [[sexpr.parse(m)]]
        return [[sexpr.parse(e) if isinstance(e, str) else ex.as_expr(e) for e in row] for row in m]

    cover = cover or make_cover(doc.get("cover", "p1"), seed=seed)
    trans = {tuple(int(x) for x in k.split(",")): dec(v) for k, v in doc["transitions"].items()}
    metrics = {int(k): dec(v) for k, v in doc["metrics"].items()}
    return HermitianBundleData(cover, int(doc.get("rank", 1)), trans, metrics, name=doc.get("name", ""))
