"""Scenario ingestion and predicate execution.

A scenario is a JSON (or TOML) document::

    {"kind": "p1-bundle" | "torus" | "fiber-config" | "composite",
     "name": "...", "seed": 0,
     "payload": {...},             # module-specific, see README
     "predicates": ["cocycle", {"name": "chern_number", "tol": 1e-6}, ...]}

Every predicate is executed even if an earlier one fails; errors raised by
a predicate are recorded in its entry.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import sympy as sp

from . import atiyah as at
from . import cech
from . import fibered as fb
from . import tori
from .errors import ArithAtiyahError, ParseError
from .expr import Z

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

KINDS = ("p1-bundle", "torus", "fiber-config", "composite")


@dataclass(frozen=True)
class Options:
    tol_structural: float = 1e-10
    tol_quadrature: float = 1e-6
    seed: int | None = None  # None: use the scenario's own seed
    nmax_torsion: int = tori.N_MAX
    root_tol: float = tori.ROOT_TOL


CONVENTIONS = {
    "transition": "f_ij = f_j^{-1} f_i, written in the coordinate of chart i",
    "metric": "h_i = f_ij^* h_j f_ij",
    "atiyah": "alpha_ij = -f_ij^{-1} df_ij, beta_i = -h_i^{-1} dh_i (frame of the first chart)",
    "cech": "(delta b)_ij = b_j - b_i; cocycle alpha_ij = beta_i - beta_j; coboundary (-delta g, g)",
    "splitting": "s(f) = [f, -nabla f]; lambda.[f, w] = [lambda f, lambda w - f (x) d lambda]",
    "psi": "Psi = delbar(beta) = -curvature, (f dz) ^ dzbar <-> f dz^dzbar",
    "degree": "residue (1/2 pi i) of alpha_01 over |z| = 1, deg O(1) = +1",
    "partition_of_unity": "chi_0 = 1 on |z| <= 0.8, 0 on |z| >= 1.2, smooth step exp(-1/t)",
}


class InputError(ArithAtiyahError):
    """Scenario cannot be interpreted (exit code 2)."""


# loading -----------------------------------------------------------------


def load_text(text: str, fmt: str = "json") -> dict:
    if fmt == "toml":
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as err:
            raise ParseError(str(err), None) from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{err.msg} (line {err.lineno}, column {err.colno})", err.pos) from err


def load_scenario(path: str | Path) -> dict:
    path = Path(path)
    fmt = "toml" if path.suffix.lower() == ".toml" else "json"
    doc = load_text(path.read_text(), fmt)
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise InputError(f"scenario kind must be one of {KINDS}")
    return doc


def _predicate_spec(p) -> tuple[str, dict]:
    if isinstance(p, str):
        return p, {}
    if isinstance(p, dict) and "name" in p:
        return p["name"], {k: v for k, v in p.items() if k != "name"}
    raise InputError(f"bad predicate entry {p!r}")


def _clean(value):
    """Make a value JSON-safe and deterministic (no NaN, tuples -> lists)."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return v
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


# p1 bundles --------------------------------------------------------------


class BundleContext:
    def __init__(self, payload: dict, opts: Options):
        self.opts = opts
        self.data = at.bundle_from_json(payload, seed=opts.seed)

    @property
    def cocycle(self):
        if not hasattr(self, "_cocycle"):
            self._cocycle = at.atiyah_cocycle(self.data)
        return self._cocycle


def _p_validate(ctx: BundleContext, tol=None):
    rep = ctx.data.validate(tol or ctx.opts.tol_structural)
    return rep.ok, rep.as_dict()


def _p_cocycle(ctx: BundleContext, tol=None):
    check = cech.is_cone_cocycle(ctx.cocycle, tol or ctx.opts.tol_structural)
    doc = ctx.cocycle.to_json(check)
    return check.ok, {"cocycle": doc}


def _p_curvature(ctx: BundleContext, tol=None):
    rep = at.verify_curvature_identity(ctx.data, tol or ctx.opts.tol_structural)
    return True, rep


def _p_trace(ctx: BundleContext, tol=None):
    tr = at.trace_reduce(ctx.cocycle)
    ok = tr.equals(at.c1_hodge(at.determinant(ctx.data)))
    return ok, {"trace_equals_det": ok}


def _p_c1(ctx: BundleContext, tol=None):
    c1 = at.c1_hodge(ctx.data)
    ok = c1.equals(at.trace_reduce(ctx.cocycle))
    return ok, {"c1_hodge": c1.to_json(), "matches_atiyah": ok}


def _p_chern(ctx: BundleContext, tol=None, expect=None):
    tol = tol or ctx.opts.tol_quadrature
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = at.chern_number(ctx.data, tol)
    residue = cech.residue_degree(at.trace_reduce(ctx.cocycle))
    nearest = round(value)
    ok = abs(value - residue.real) <= tol and abs(value - nearest) <= tol and not caught
    if expect is not None:
        ok = ok and nearest == expect
    return ok, {
        "chern_number": value,
        "residue_degree": residue.real,
        "integer": nearest,
        "warnings": [str(w.message) for w in caught],
    }


def _test_gamma(system) -> cech.Cochain:
    """A holomorphic 0-cochain with chartwise polynomial coefficients."""
    from .forms import Form

    shape = system.shape
    eye = sp.ImmutableMatrix.eye(shape[0])
    vals = {(i,): Form.one_form(dz=eye * (Z**2 + i)) for i in system.cover.charts}
    return cech.Cochain(system, 0, vals, True)


def _p_exact(ctx: BundleContext, tol=None):
    tol = tol or ctx.opts.tol_structural
    c = at.c1_hodge(at.determinant(ctx.data))
    nu_nonzero = not cech.map_nu(c).is_zero()
    degree = round(cech.residue_degree(c).real)
    gamma = _test_gamma(c.system)
    psi0, _ = cech.map_psi(c, tol)
    psi1, _ = cech.map_psi(cech.add(c, cech.coboundary(gamma)), tol)
    shift = max((psi0[i] - psi1[i]).max_abs(c.cover.points((i,))) for i in c.cover.charts)
    ok = nu_nonzero == (degree != 0) and shift <= tol
    return ok, {"nu_nonzero": nu_nonzero, "residue_degree": degree, "psi_coboundary_shift": shift}


BUNDLE_PREDICATES: dict[str, Callable] = {
    "validate": _p_validate,
    "cocycle": _p_cocycle,
    "curvature_identity": _p_curvature,
    "trace_determinant": _p_trace,
    "c1_hodge": _p_c1,
    "chern_number": _p_chern,
    "exact_sequence": _p_exact,
}


# tori ----------------------------------------------------------------------


class TorusContext:
    def __init__(self, payload: dict, opts: Options):
        self.opts = opts
        self.cls = tori.class_from_json(payload)
        self.subset = payload.get("subset", list(range(self.cls.lattice.g)))
        self.expect = payload.get("expect", {})


def _t_monodromy(ctx: TorusContext):
    rho = tori.monodromy(ctx.cls)
    return True, {"rho": [complex(v) for v in rho.values]}


def _t_hodge(ctx: TorusContext):
    split = tori.hodge_split(ctx.cls)
    return split.residual <= ctx.opts.tol_structural, split.as_dict()


def _t_compact(ctx: TorusContext):
    compact = tori.in_max_compact(ctx.cls, ctx.opts.tol_structural)
    ok = ctx.expect.get("compact", compact) == compact
    return ok, {"compact": compact}


def _t_torsion(ctx: TorusContext):
    o = ctx.opts
    order = tori.is_torsion(ctx.cls, o.nmax_torsion, o.root_tol)
    root = tori.root_of_unity_order(tori.monodromy(ctx.cls), o.nmax_torsion, o.root_tol)
    compact = tori.in_max_compact(ctx.cls, o.tol_structural)
    agree = (order is not None) == (compact and root is not None)
    ok = agree and ctx.expect.get("torsion_order", order) == order
    return ok, {"torsion_order": order, "root_of_unity_order": root, "compact": compact, "biconditional": agree}


def _t_lift(ctx: TorusContext):
    lift = tori.unitary_lift(ctx.cls)
    ok = lift.residual <= ctx.opts.tol_structural and tori.in_max_compact(lift.lifted, 0.0)
    return ok, {"residual": lift.residual, "lifted": lift.lifted.to_json()["phi"], "linear": [complex(v) for v in lift.linear]}


def _t_sl(ctx: TorusContext):
    v = tori.schneider_lang_flag(ctx.cls, ctx.subset, ctx.opts.root_tol, ctx.opts.nmax_torsion)
    return v.consistent, v.as_dict()


def _t_real(ctx: TorusContext):
    rep = tori.real_monodromy_test(ctx.cls, ctx.opts.root_tol)
    return rep.implication_holds, rep.as_dict()


def _t_double(ctx: TorusContext):
    rep = tori.conjugate_double(ctx.cls)
    return rep.residual <= 1e-12 and rep.span_determinant > 1e-12, rep.as_dict()


TORUS_PREDICATES = {
    "monodromy": _t_monodromy,
    "hodge_split": _t_hodge,
    "compact": _t_compact,
    "torsion": _t_torsion,
    "unitary_lift": _t_lift,
    "schneider_lang": _t_sl,
    "real_monodromy": _t_real,
    "conjugate_double": _t_double,
}


# fibered --------------------------------------------------------------------


class FiberContext:
    def __init__(self, payload: dict, opts: Options):
        self.opts = opts
        self.payload = payload
        self.config = fb.FiberConfig.from_json(payload["config"]) if "config" in payload else None
        self.expect = payload.get("expect", {})


def _f_validate(ctx: FiberContext):
    return True, fb.validate(ctx.config)


def _f_kernel(ctx: FiberContext):
    proof = fb.kernel_rank_check(ctx.config, seed=ctx.opts.seed)
    return True, proof.as_dict()


def _f_zariski(ctx: FiberContext):
    res = fb.zariski_decompose(ctx.config, ctx.payload["m"])
    return True, res.as_dict()


def _f_prop(ctx: FiberContext):
    prop = fb.hodge_proportionality(fb.HodgeClassData.from_json(ctx.payload["surface"]))
    return True, prop.as_dict()


def _f_va(ctx: FiberContext):
    p = ctx.payload
    v = fb.va_verdict(fb.HodgeClassData.from_json(p["surface"]), p.get("degs", []), p["flags"], bool(p.get("nfp", False)))
    ok = all(getattr(v, k) == want for k, want in ctx.expect.items() if k in ("VA1", "VA2", "VA3"))
    return ok, v.as_dict()


FIBER_PREDICATES = {
    "validate": _f_validate,
    "kernel": _f_kernel,
    "zariski": _f_zariski,
    "proportionality": _f_prop,
    "va_verdict": _f_va,
}


# orchestration ------------------------------------------------------------

_REGISTRY = {
    "p1-bundle": (BundleContext, BUNDLE_PREDICATES),
    "torus": (TorusContext, TORUS_PREDICATES),
    "fiber-config": (FiberContext, FIBER_PREDICATES),
}


def _run_predicate(fn, ctx, args) -> dict:
    try:
        passed, detail = fn(ctx, **args)
        return {"passed": bool(passed), **detail}
    except TypeError as err:
        raise InputError(f"bad predicate arguments {args}: {err}") from err
    except ArithAtiyahError as err:
        entry = {"passed": False, "error": type(err).__name__, "message": str(err)}
        for attr in ("residual", "condition"):
            if hasattr(err, attr):
                entry[attr] = getattr(err, attr)
        return entry


def run_scenario(doc: dict, opts: Options | None = None) -> dict:
    """Execute every predicate of a scenario and build its report."""
    opts = opts or Options()
    if opts.seed is None:
        opts = Options(**{**asdict(opts), "seed": int(doc.get("seed", 0))})
    kind = doc.get("kind")
    if kind == "composite":
        from . import catalog

        parts = []
        for sub in doc.get("payload", {}).get("scenarios", []):
            if isinstance(sub, str):
                sub = catalog.emit(sub)
            parts.append(run_scenario(sub, opts))
        return _clean({
            "scenario": doc.get("name", ""),
            "kind": kind,
            "passed": all(p["passed"] for p in parts),
            "parts": parts,
        })
    if kind not in _REGISTRY:
        raise InputError(f"unknown scenario kind {kind!r}")
    make_ctx, table = _REGISTRY[kind]
    specs = [_predicate_spec(p) for p in doc.get("predicates", list(table))]
    unknown = [name for name, _ in specs if name not in table]
    if unknown:
        raise InputError(f"unknown predicates for {kind}: {unknown}")
    try:
        ctx = make_ctx(doc.get("payload", {}), opts)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"bad {kind} payload: {err}") from err
    results = {}
    for name, args in specs:
        results[name] = _run_predicate(table[name], ctx, args)
    report = {
        "scenario": doc.get("name", ""),
        "kind": kind,
        "passed": all(r["passed"] for r in results.values()),
        "predicates": results,
        "conventions": {
            **(CONVENTIONS if kind == "p1-bundle" else {}),
            "seed": opts.seed,
            "tolerances": {
                "structural": opts.tol_structural,
                "quadrature": opts.tol_quadrature,
                "root_of_unity": opts.root_tol,
                "nmax_torsion": opts.nmax_torsion,
            },
        },
    }
    return _clean(report)


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
