"""Built-in example scenarios.

Every entry is a plain JSON-able scenario document (see cli.py for the
format).  Bundle builders are also exposed directly for tests.
"""

from __future__ import annotations

import copy
from fractions import Fraction

import numpy as np
import sympy as sp

from .atiyah import HermitianBundleData, bundle_to_json, make_cover
from .expr import Z, ZB, conj, simplify

FS_RANGE = range(-3, 4)


def fs_name(n: int) -> str:
    return f"p1-O{n}-fubini-study"


def fubini_study(n: int, cover=None) -> HermitianBundleData:
    """O(n) on P^1 with ``f_01 = z^{-n}`` and the Fubini-Study metric power."""
    cover = cover or make_cover("p1")
    h = (1 + Z * ZB) ** (-n)
    return HermitianBundleData(cover, 1, {(0, 1): [[Z ** (-n)]]}, {0: [[h]], 1: [[h]]}, name=fs_name(n))


def fubini_study_3chart(n: int, cover=None) -> HermitianBundleData:
    """O(n) on the three-chart cover; chart 2 is ``u = 1/(z-1)``."""
    cover = cover or make_cover("p1-3chart")
    h = (1 + Z * ZB) ** (-n)
    h2 = (Z * ZB + (1 + Z) * (1 + ZB)) ** (-n)
    trans = {(0, 1): [[Z ** (-n)]], (0, 2): [[(Z - 1) ** (-n)]], (1, 2): [[(1 - Z) ** (-n)]]}
    return HermitianBundleData(cover, 1, trans, {0: [[h]], 1: [[h]], 2: [[h2]]}, name=f"p1-3chart-O{n}-fubini-study")


def trivial_exp_metric(cover=None) -> HermitianBundleData:
    """Trivial bundle with ``|1|^2 = exp(phi)``, ``phi = (z + zb)/(1 + z zb)``.

    ``phi`` is smooth on all of P^1 and has the same formula in ``w = 1/z``.
    """
    cover = cover or make_cover("p1")
    phi = (Z + ZB) / (1 + Z * ZB)
    return HermitianBundleData(cover, 1, {(0, 1): [[1]]}, {0: [[sp.exp(phi)]], 1: [[sp.exp(phi)]]}, name="p1-trivial-exp-metric")


def split_rank2(a: int, b: int, cover=None) -> HermitianBundleData:
    cover = cover or make_cover("p1")
    r = 1 + Z * ZB
    h = sp.diag(r ** (-a), r ** (-b))
    return HermitianBundleData(cover, 2, {(0, 1): sp.diag(Z ** (-a), Z ** (-b))}, {0: h, 1: h}, name=f"p1-O{a}+O{b}")


def gauged_rank2(a: int, b: int, gauge: sp.MatrixBase, cover=None, name: str = "") -> HermitianBundleData:
    """Re-frame ``O(a)+O(b)`` on chart 0 by a holomorphic ``gauge`` invertible on C.

    With ``f_0' = f_0 A`` the transition becomes ``f_01 A`` and the Gram
    matrix ``A^* h_0 A``; chart 1 is unchanged.
    """
    base = split_rank2(a, b, cover)
    A = sp.ImmutableMatrix(gauge)
    A_star = A.T.applyfunc(conj)
    f01 = (base.frame(0, 1) * A).applyfunc(simplify)
    h0 = (A_star * base.metrics[0] * A).applyfunc(simplify)
    return HermitianBundleData(base.cover, 2, {(0, 1): f01}, {0: h0, 1: base.metrics[1]}, name=name or f"p1-O{a}+O{b}-gauged")


def triangular_rank2(a: int, b: int, cover=None) -> HermitianBundleData:
    """Upper-triangular transitions with diagonal ``(z^{-a}, z^{-b})``."""
    return gauged_rank2(a, b, sp.Matrix([[1, Z], [0, 1]]), cover, name=f"p1-O{a}+O{b}-triangular")


def random_rank2(seed: int, cover=None) -> HermitianBundleData:
    """A split bundle seen through a random unipotent polynomial gauge."""
    rng = np.random.default_rng(seed)
    a, b = (int(x) for x in rng.integers(-2, 3, size=2))
    p = sum(Fraction(int(c), 2) * Z**k for k, c in enumerate(rng.integers(-2, 3, size=2)))
    q = sum(Fraction(int(c), 2) * Z**k for k, c in enumerate(rng.integers(-2, 3, size=2)))
    A = sp.Matrix([[1, p], [0, 1]]) * sp.Matrix([[1, 0], [q, 1]])
    return gauged_rank2(a, b, A.applyfunc(sp.nsimplify), cover, name=f"p1-rank2-random-{seed}")


def rank1_bundles(cover=None):
    cover = cover or make_cover("p1")
    out = [fubini_study(n, cover) for n in FS_RANGE]
    out.append(trivial_exp_metric(cover))
    return out


def rank2_bundles(cover=None):
    cover = cover or make_cover("p1")
    return [split_rank2(1, -2, cover), triangular_rank2(2, 1, cover), random_rank2(2, cover), random_rank2(3, cover)]


# scenario documents -------------------------------------------------------

BUNDLE_PREDICATES = ["validate", "cocycle", "curvature_identity", "trace_determinant"]


def _bundle_scenario(data: HermitianBundleData, extra=()) -> dict:
    preds = list(BUNDLE_PREDICATES)
    if data.rank == 1:
        preds.append("c1_hodge")
    preds.extend(extra)
    return {"kind": "p1-bundle", "name": data.name, "seed": 0, "payload": bundle_to_json(data), "predicates": preds}


def _bundle_entries():
    out = {}
    for n in FS_RANGE:
        d = fubini_study(n)
        out[d.name] = _bundle_scenario(d, ["chern_number", "exact_sequence"])
    d = trivial_exp_metric()
    out[d.name] = _bundle_scenario(d, ["chern_number"])
    d = fubini_study_3chart(2)
    out[d.name] = _bundle_scenario(d)
    for d in rank2_bundles():
        out[d.name] = _bundle_scenario(d, ["chern_number"])
    return out


def _entries():
    out = _bundle_entries()
    from .tori import catalog_scenarios as torus_scenarios
    from .fibered import catalog_scenarios as fiber_scenarios

    out.update(torus_scenarios())
    out.update(fiber_scenarios())
    return out


_CACHE: dict = {}


def names() -> list:
    if not _CACHE:
        _CACHE.update(_entries())
    return sorted(_CACHE)


def emit(name: str) -> dict:
    names()
    try:
        return copy.deepcopy(_CACHE[name])
    except KeyError:
        raise KeyError(f"no catalog entry {name!r}") from None
