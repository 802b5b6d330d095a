"""Exact linear algebra of vertical divisors on a fibered surface.

Fiber intersection matrices, the kernel lemma for the fiber quadratic form,
the Hodge-index proportionality test and the VA1/VA2/VA3 verdicts.  All
arithmetic uses ``fractions.Fraction``; no floating point appears here.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import InconsistentInput, InvariantViolation, KernelAnomaly


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {value!r}")


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# linear algebra -----------------------------------------------------------


def rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns ``(matrix, pivot_columns)``."""
    m = [[as_fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence]) -> list:
    """Basis of the right kernel, one vector per free column."""
    m, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def matvec(q, v) -> list:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in q]


def _common_denominator(v) -> tuple[list, int]:
    """Integers ``a`` and ``L`` with ``v = a / L``."""
    L = 1
    for x in v:
        L = L * x.denominator // gcd(L, x.denominator)
    return [x.numerator * (L // x.denominator) for x in v], L


def quadratic(q, v) -> Fraction:
    """``v^T q v`` for integer ``q``, summed in integers over one denominator."""
    a, L = _common_denominator([as_fraction(x) for x in v])
    total = 0
    for i, row in enumerate(q):
        if a[i]:
            total += a[i] * sum(qij * aj for qij, aj in zip(row, a) if qij)
    return Fraction(total, L * L)


# fiber configurations -----------------------------------------------------


@dataclass(frozen=True)
class FiberConfig:
    """Components ``D_i`` with multiplicities ``n_i`` and pairings ``q_ij = D_i.D_j``."""

    n: tuple
    q: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "q", tuple(tuple(int(x) for x in row) for row in self.q))
        if any(len(row) != len(self.n) for row in self.q) or len(self.q) != len(self.n):
            raise InvariantViolation("shape", "q must be r x r with r = len(n)")

    @property
    def r(self) -> int:
        return len(self.n)

    def to_json(self) -> dict:
        return {"name": self.name, "n": list(self.n), "q": [list(row) for row in self.q]}

    @classmethod
    def from_json(cls, doc) -> "FiberConfig":
        return cls(tuple(doc["n"]), tuple(tuple(r) for r in doc["q"]), doc.get("name", ""))


def _connected(q) -> bool:
    r = len(q)
    seen = {0}
    todo = deque([0])
    while todo:
        i = todo.popleft()
        for j in range(r):
            if j not in seen and q[i][j] > 0:
                seen.add(j)
                todo.append(j)
    return len(seen) == r


def validate(config: FiberConfig) -> dict:
    """Check symmetry, positivity, ``q n = 0`` and connectivity exactly."""
    q, n = config.q, config.n
    r = config.r
    if r < 1:
        raise InvariantViolation("nonempty", "a fiber has at least one component")
    if any(x <= 0 for x in n):
        raise InvariantViolation("multiplicities", f"n must be positive, got {list(n)}")
    for i in range(r):
        for j in range(r):
            if q[i][j] != q[j][i]:
                raise InvariantViolation("symmetric", f"q[{i}][{j}] != q[{j}][{i}]")
            if i != j and q[i][j] < 0:
                raise InvariantViolation("off-diagonal-nonnegative", f"q[{i}][{j}] = {q[i][j]} < 0")
    qn = [sum(q[i][j] * n[j] for j in range(r)) for i in range(r)]
    if any(qn):
        raise InvariantViolation("q.n = 0", f"q.n = {qn}")
    if not _connected(q):
        raise InvariantViolation("connected", "dual graph of the fiber is disconnected")
    return {"name": config.name, "r": r, "symmetric": True, "off_diagonal_nonnegative": True, "q_n_zero": True, "connected": True}


@dataclass(frozen=True)
class ZariskiResult:
    m0: Optional[Fraction]
    residual: tuple  # q.m, exact

    def as_dict(self) -> dict:
        return {
            "m0": None if self.m0 is None else fraction_str(self.m0),
            "residual": [fraction_str(x) for x in self.residual],
        }


def zariski_decompose(config: FiberConfig, m: Sequence) -> ZariskiResult:
    """Write ``m = m0 n`` when ``q m = 0``; otherwise report ``q m``."""
    m = [as_fraction(x) for x in m]
    if len(m) != config.r:
        raise ValueError("m must have one entry per component")
    res = tuple(matvec(config.q, m))
    if any(res):
        return ZariskiResult(None, res)
    m0 = m[0] / config.n[0]
    if any(mi != m0 * ni for mi, ni in zip(m, config.n)):
        # impossible for configs passing validate
        raise KernelAnomaly(f"q.m = 0 but m = {[fraction_str(x) for x in m]} is not a multiple of n")
    return ZariskiResult(m0, res)


def negativity_sides(config: FiberConfig, m: Sequence) -> tuple[Fraction, Fraction]:
    """Both sides of ``sum q_ij m_i m_j = -sum_{i<j} q_ij n_i n_j (m_i/n_i - m_j/n_j)^2``."""
    m = [as_fraction(x) for x in m]
    q, n = config.q, config.n
    lhs = quadratic(q, m)
    # n_i n_j (m_i/n_i - m_j/n_j)^2 = (n_j m_i - n_i m_j)^2 / (n_i n_j)
    a, L = _common_denominator(m)
    rhs = Fraction(0)
    for i in range(config.r):
        for j in range(i + 1, config.r):
            if q[i][j]:
                d = n[j] * a[i] - n[i] * a[j]
                rhs -= Fraction(q[i][j] * d * d, n[i] * n[j])
    return lhs, rhs / (L * L)


def random_rational_vector(rng: random.Random, r: int, height: int = 20) -> list:
    return [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(r)]


@dataclass(frozen=True)
class KernelProof:
    name: str
    kernel_basis: tuple
    rank: int
    identity_checks: int
    max_quadratic_value: Fraction  # over the samples; <= 0 by negativity

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kernel_basis": [[fraction_str(x) for x in v] for v in self.kernel_basis],
            "rank": self.rank,
            "kernel_dimension": len(self.kernel_basis),
            "identity_checks": self.identity_checks,
            "max_quadratic_value": fraction_str(self.max_quadratic_value),
        }


def kernel_rank_check(config: FiberConfig, samples: int = 100, seed: int = 0) -> KernelProof:
    """Prove ``ker q = Q n`` by elimination and test the negativity identity.

    Raises KernelAnomaly if the kernel is not the line through ``n`` or the
    identity fails on a sample.
    """
    basis = nullspace(config.q)
    if len(basis) != 1:
        raise KernelAnomaly(f"kernel has dimension {len(basis)}, expected 1")
    v = basis[0]
    k = next(i for i, x in enumerate(v) if x != 0)
    ratio = v[k] / config.n[k]
    if any(x != ratio * ni for x, ni in zip(v, config.n)):
        raise KernelAnomaly(f"kernel vector {[fraction_str(x) for x in v]} is not proportional to n")
    # normalize the witness to n itself
    basis = [[x / ratio for x in v]]
    rng = random.Random(seed)
    worst = None
    for _ in range(samples):
        m = random_rational_vector(rng, config.r)
        lhs, rhs = negativity_sides(config, m)
        if lhs != rhs:
            raise KernelAnomaly(f"negativity identity fails at m = {[fraction_str(x) for x in m]}")
        worst = lhs if worst is None else max(worst, lhs)
    return KernelProof(config.name, tuple(tuple(b) for b in basis), config.r - 1, samples, worst if worst is not None else Fraction(0))


# Kodaira fibers -----------------------------------------------------------

KODAIRA_NAMES = tuple([f"I{k}" for k in range(1, 13)] + ["II", "III", "IV", "I0*"])


def cycle_config(k: int) -> FiberConfig:
    """``I_k``: a cycle of ``k`` rational curves (a nodal or irreducible curve for k = 1)."""
    if k == 1:
        return FiberConfig((1,), ((0,),), "I1")
    if k == 2:
        return FiberConfig((1, 1), ((-2, 2), (2, -2)), "I2")
    q = [[0] * k for _ in range(k)]
    for i in range(k):
        q[i][i] = -2
        q[i][(i + 1) % k] = 1
        q[(i + 1) % k][i] = 1
    return FiberConfig((1,) * k, tuple(map(tuple, q)), f"I{k}")


def kodaira(name: str) -> FiberConfig:
    if name.startswith("I") and name[1:].isdigit():
        return cycle_config(int(name[1:]))
    if name == "II":
        return FiberConfig((1,), ((0,),), "II")
    if name == "III":
        return FiberConfig((1, 1), ((-2, 2), (2, -2)), "III")
    if name == "IV":
        return FiberConfig((1, 1, 1), ((-2, 1, 1), (1, -2, 1), (1, 1, -2)), "IV")
    if name == "I0*":
        q = [[-2 if i == j else 0 for j in range(5)] for i in range(5)]
        for leaf in range(4):
            q[leaf][4] = q[4][leaf] = 1
        return FiberConfig((1, 1, 1, 1, 2), tuple(map(tuple, q)), "I0*")
    raise KeyError(f"unknown Kodaira type {name!r}")


def kodaira_catalog() -> list:
    return [kodaira(k) for k in KODAIRA_NAMES]


# Hodge index and the VA verdicts ------------------------------------------


@dataclass(frozen=True)
class HodgeClassData:
    """Pairing numbers ``b_hh = beta^2 h^{d-2}``, ``b_F = beta F h^{d-2}``,
    ``b_h = beta h^{d-1}`` and ``F_h = F h^{d-1}``."""

    b_hh: Fraction
    b_F: Fraction
    b_h: Fraction
    F_h: Fraction

    def __post_init__(self):
        for name in ("b_hh", "b_F", "b_h", "F_h"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.F_h <= 0:
            raise InvariantViolation("F_h > 0", f"F_h = {fraction_str(self.F_h)}")
        if self.b_h.denominator != 1:
            raise InvariantViolation("b_h integral", f"b_h = {fraction_str(self.b_h)}")

    def to_json(self) -> dict:
        return {k: fraction_str(getattr(self, k)) for k in ("b_hh", "b_F", "b_h", "F_h")}

    @classmethod
    def from_json(cls, doc) -> "HodgeClassData":
        return cls(doc["b_hh"], doc["b_F"], doc["b_h"], doc["F_h"])


@dataclass(frozen=True)
class Proportionality:
    proportional: bool
    m: Optional[Fraction]
    witnesses: dict

    def as_dict(self) -> dict:
        return {
            "proportional": self.proportional,
            "m": None if self.m is None else fraction_str(self.m),
            "witnesses": {k: fraction_str(v) for k, v in self.witnesses.items()},
        }


def hodge_proportionality(data: HodgeClassData) -> Proportionality:
    """``beta`` is ``m F`` with ``m = b_h / F_h`` iff ``b_hh = b_F = 0``."""
    if data.b_hh == 0 and data.b_F == 0:
        return Proportionality(True, data.b_h / data.F_h, {})
    nonzero = {k: v for k, v in (("b_hh", data.b_hh), ("b_F", data.b_F)) if v != 0}
    return Proportionality(False, None, nonzero)


@dataclass(frozen=True)
class VAVerdict:
    VA1: bool
    VA2: bool
    VA3: bool
    m: Optional[Fraction]
    power: Optional[int]  # N with N c1(L) = (N m) F integral
    nonzero_degrees: tuple
    flags: dict
    nfp: Optional[dict] = None

    def as_dict(self) -> dict:
        doc = {
            "VA1": self.VA1,
            "VA2": self.VA2,
            "VA3": self.VA3,
            "m": None if self.m is None else fraction_str(self.m),
            "power": self.power,
            "nonzero_degrees": [[f, i, fraction_str(d)] for f, i, d in self.nonzero_degrees],
            "flags": dict(self.flags),
            "consistent": True,
        }
        if self.nfp is not None:
            doc["nfp"] = dict(self.nfp)
        return doc


FLAG_NAMES = ("power_alg_equiv_zero", "trace_point")


def va_verdict(surface: HodgeClassData, degs: Sequence[Sequence], flags: dict, nfp: bool = False) -> VAVerdict:
    """Evaluate VA1/VA2/VA3 for ``L`` from its pairing numbers and fiber degrees.

    ``degs[f][i]`` is the degree of ``L`` on component ``i`` of the ``f``-th
    special fiber.  Raises InconsistentInput when the data break the
    equivalence VA1 <=> VA3.
    """
    missing = [k for k in FLAG_NAMES if k not in flags]
    if missing:
        raise ValueError(f"missing flags: {missing}")
    prop = hodge_proportionality(surface)
    va1 = prop.proportional
    power = prop.m.denominator if va1 else None
    nonzero = tuple(
        (f, i, as_fraction(d)) for f, row in enumerate(degs) for i, d in enumerate(row) if as_fraction(d) != 0
    )
    va3 = bool(flags["power_alg_equiv_zero"]) and bool(flags["trace_point"]) and not nonzero
    if va1 != va3:
        raise InconsistentInput(
            f"VA1 = {va1} but VA3 = {va3}: the supplied pairing numbers, degrees and flags contradict each other"
        )
    extra = None
    if nfp:
        extra = {"VA2'": va1, "VA3'": va3}
    return VAVerdict(va1, va1, va3, prop.m, power, nonzero, {k: bool(flags[k]) for k in FLAG_NAMES}, extra)


# synthetic surfaces --------------------------------------------------------


@dataclass(frozen=True)
class SyntheticSurface:
    """Intersection model: ``h^2 = a``, ``h.F = F_h``, ``F^2 = 0`` and special
    fibers with ``h.D_i = c_i`` (so ``sum n_i c_i = F_h``)."""

    a: int
    F_h: int
    fibers: tuple  # of (FiberConfig, c)

    def pairing_data(self, x, y, ms) -> tuple[HodgeClassData, list]:
        """Numbers for ``beta = x h + y F + sum m^(f)_i D^(f)_i``."""
        x, y = as_fraction(x), as_fraction(y)
        b_hh = x * x * self.a + 2 * x * y * self.F_h
        b_h = x * self.a + y * self.F_h
        degs = []
        for (cfg, c), m in zip(self.fibers, ms):
            m = [as_fraction(v) for v in m]
            mc = sum((ci * mi for ci, mi in zip(c, m)), Fraction(0))
            b_hh += 2 * x * mc + quadratic(cfg.q, m)
            b_h += mc
            degs.append([x * ci + qm for ci, qm in zip(c, matvec(cfg.q, m))])
        return HodgeClassData(b_hh, x * self.F_h, b_h, self.F_h), degs


def random_surface(rng: random.Random) -> SyntheticSurface:
    F_h = rng.randint(2, 6)
    fibers = []
    for name in rng.sample(KODAIRA_NAMES, rng.randint(1, 3)):
        cfg = kodaira(name)
        # distribute F_h over components with sum n_i c_i = F_h, c_i >= 0
        c = [0] * cfg.r
        left = F_h
        while left > 0:
            i = rng.randrange(cfg.r)
            if cfg.n[i] <= left:
                c[i] += 1
                left -= cfg.n[i]
        fibers.append((cfg, tuple(c)))
    return SyntheticSurface(rng.randint(1, 5), F_h, tuple(fibers))


@dataclass(frozen=True)
class VADataset:
    surface: SyntheticSurface
    data: HodgeClassData
    degs: list
    flags: dict
    expected: bool
    description: str = ""
    extra: dict = field(default_factory=dict)


def va_datasets(seed: int = 0, count: int = 10) -> list:
    """``count`` vertical-plus-torsion datasets followed by ``count`` ample-perturbed ones."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        s = random_surface(rng)
        m0 = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in s.fibers]
        total = sum((m * s.F_h for m in m0), Fraction(0))
        k = rng.randint(-5, 5)
        y = (k - total) / s.F_h  # makes b_h = k integral
        ms = [[m * ni for ni in cfg.n] for m, (cfg, _) in zip(m0, s.fibers)]
        data, degs = s.pairing_data(0, y, ms)
        flags = {"power_alg_equiv_zero": True, "trace_point": True}
        out.append(VADataset(s, data, degs, flags, True, "vertical + torsion"))
    for _ in range(count):
        s = random_surface(rng)
        x = rng.randint(1, 3)
        ms = [random_rational_vector(rng, cfg.r, 5) for cfg, _ in s.fibers]
        mc = sum(
            (sum((as_fraction(ci) * mi for ci, mi in zip(c, m)), Fraction(0)) for (cfg, c), m in zip(s.fibers, ms)),
            Fraction(0),
        )
        k = rng.randint(-5, 5)
        y = (k - x * s.a - mc) / s.F_h
        data, degs = s.pairing_data(x, y, ms)
        flags = {"power_alg_equiv_zero": rng.random() < 0.5, "trace_point": rng.random() < 0.5}
        out.append(VADataset(s, data, degs, flags, False, "ample perturbed"))
    return out


# scenarios ----------------------------------------------------------------


def _frac_list(v):
    return [fraction_str(as_fraction(x)) for x in v]


def catalog_scenarios() -> dict:
    out = {}
    for cfg in kodaira_catalog():
        name = f"kodaira-{cfg.name}"
        out[name] = {
            "kind": "fiber-config",
            "name": name,
            "seed": 0,
            "payload": {"config": cfg.to_json(), "m": _frac_list([2 * x for x in cfg.n])},
            "predicates": ["validate", "kernel", "zariski"],
        }
    # L = pi^* M with deg M = 2 on a surface with an I2 fiber
    i2 = kodaira("I2")
    surface = SyntheticSurface(3, 2, ((i2, (1, 1)),))
    data, degs = surface.pairing_data(0, 2, [[0, 0]])
    out["fibered-va-pullback"] = {
        "kind": "fiber-config",
        "name": "fibered-va-pullback",
        "seed": 0,
        "payload": {
            "config": i2.to_json(),
            "surface": data.to_json(),
            "degs": [_frac_list(d) for d in degs],
            "flags": {"power_alg_equiv_zero": True, "trace_point": True},
            "expect": {"VA1": True},
        },
        "predicates": ["validate", "kernel", "proportionality", "va_verdict"],
    }
    # L = O(D_1) for one component of I2
    data, degs = surface.pairing_data(0, 0, [[1, 0]])
    out["fibered-va-component"] = {
        "kind": "fiber-config",
        "name": "fibered-va-component",
        "seed": 0,
        "payload": {
            "config": i2.to_json(),
            "m": ["1", "0"],
            "surface": data.to_json(),
            "degs": [_frac_list(d) for d in degs],
            "flags": {"power_alg_equiv_zero": True, "trace_point": True},
            "expect": {"VA1": False},
        },
        "predicates": ["validate", "zariski", "proportionality", "va_verdict"],
    }
    return out
