"""Period-lattice model of the universal vector extension of a complex torus.

A line bundle with integrable connection on ``C^g / Lambda`` is recorded by
its character ``phi: Lambda -> C`` modulo ``Hom(Lambda, 2 pi i Z)``; the
monodromy is ``exp(phi)``.  Everything here is floating point with explicit
tolerances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NoRealStructure, NotABasis, SingularCurve, SingularLattice

TWO_PI = 2.0 * math.pi
SOLVE_TOL = 1e-10
ROOT_TOL = 1e-9
N_MAX = 10_000


# lattices -------------------------------------------------------------


@dataclass(frozen=True)
class RealStructure:
    """Complex conjugation on generators: ``conj(gamma_k) = signs[k] * gamma_{perm[k]}``."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        n = len(self.perm)
        if len(self.signs) != n or sorted(self.perm) != list(range(n)):
            raise NoRealStructure("perm must be a permutation with one sign per generator")
        for k, l in enumerate(self.perm):
            if self.perm[l] != k or self.signs[k] * self.signs[l] != 1 or self.signs[k] not in (1, -1):
                raise NoRealStructure("conjugation must be an involution with s_k s_pi(k) = 1")

    def plus_basis(self) -> list:
        """Integer coefficient vectors spanning the conjugation-fixed sublattice."""
        return self._basis(+1)

    def minus_basis(self) -> list:
        """Integer coefficient vectors spanning the anti-fixed sublattice."""
        return self._basis(-1)

    def _basis(self, eps):
        n = len(self.perm)
        out = []
        for k, l in enumerate(self.perm):
            v = [0] * n
            if k == l:
                if self.signs[k] == eps:
                    v[k] = 1
                    out.append(v)
            elif k < l:
                v[k], v[l] = 1, eps * self.signs[k]
                out.append(v)
        return out


@dataclass(frozen=True, eq=False)
class PeriodLattice:
    """``2g`` generators of a lattice in ``C^g`` (rows of ``generators``)."""

    generators: np.ndarray
    real_structure: Optional[RealStructure] = None

    def __post_init__(self):
        gens = np.atleast_2d(np.asarray(self.generators, dtype=complex))
        if gens.shape[0] == 1 and gens.shape[1] == 2:
            gens = gens.T
        g = gens.shape[1]
        if gens.shape[0] != 2 * g:
            raise SingularLattice(f"need 2g = {2 * g} generators, got {gens.shape[0]}")
        object.__setattr__(self, "generators", gens)
        det = abs(np.linalg.det(self.real_matrix))
        scale = np.prod(np.linalg.norm(self.real_matrix, axis=0))
        if not det > 1e-12 * scale:
            raise SingularLattice("generators are not an R-basis of C^g")
        if self.real_structure is not None:
            rs = self.real_structure
            if len(rs.perm) != 2 * g:
                raise NoRealStructure("real structure has the wrong number of generators")
            target = np.array([rs.signs[k] * gens[rs.perm[k]] for k in range(2 * g)])
            if np.max(np.abs(np.conj(gens) - target)) > 1e-10 * max(1.0, np.max(np.abs(gens))):
                raise NoRealStructure("real structure does not realize complex conjugation")

    @property
    def g(self) -> int:
        return self.generators.shape[1]

    @property
    def real_matrix(self) -> np.ndarray:
        """``2g x 2g`` real matrix whose columns are ``(Re gamma_k, Im gamma_k)``."""
        gens = self.generators
        return np.vstack([gens.real.T, gens.imag.T])

    def to_json(self) -> dict:
        doc = {"generators": [[[v.real, v.imag] for v in row] for row in self.generators.tolist()]}
        if self.real_structure is not None:
            doc["real_structure"] = {"perm": list(self.real_structure.perm), "signs": list(self.real_structure.signs)}
        return doc

    @classmethod
    def from_json(cls, doc) -> "PeriodLattice":
        gens = [[_complex(v) for v in row] for row in doc["generators"]]
        rs = doc.get("real_structure")
        return cls(np.array(gens), RealStructure(rs["perm"], rs["signs"]) if rs else None)


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def square_lattice(real_structure: bool = True) -> PeriodLattice:
    """``Z + iZ`` with conjugation fixing ``1`` and negating ``i``."""
    rs = RealStructure((0, 1), (1, -1)) if real_structure else None
    return PeriodLattice(np.array([[1.0], [1j]]), rs)


def elliptic_lattice(tau: complex) -> PeriodLattice:
    return PeriodLattice(np.array([[1.0], [complex(tau)]]))


# classes --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UveClass:
    """Character values ``phi(gamma_k)``, meaningful modulo ``2 pi i Z`` each."""

    lattice: PeriodLattice
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape(-1)
        if vals.shape[0] != 2 * self.lattice.g:
            raise ValueError("one value per lattice generator is required")
        object.__setattr__(self, "values", vals)

    def __add__(self, other: "UveClass") -> "UveClass":
        return UveClass(self.lattice, self.values + other.values)

    def __neg__(self) -> "UveClass":
        return UveClass(self.lattice, -self.values)

    def __sub__(self, other: "UveClass") -> "UveClass":
        return self + (-other)

    def scale(self, n: int) -> "UveClass":
        return UveClass(self.lattice, n * self.values)

    def reduced(self) -> np.ndarray:
        """Representative with imaginary parts in ``(-pi, pi]``."""
        im = self.values.imag
        red = im - TWO_PI * np.ceil((im - math.pi) / TWO_PI)
        return self.values.real + 1j * red

    def evaluate(self, coeffs: Sequence[int]) -> complex:
        """``phi`` on the lattice vector ``sum coeffs[k] gamma_k``."""
        return complex(np.dot(np.asarray(coeffs, dtype=float), self.values))

    def to_json(self) -> dict:
        return {"phi": [[v.real, v.imag] for v in self.values.tolist()]}


@dataclass(frozen=True, eq=False)
class MonodromyChar:
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape(-1)
        if np.any(vals == 0):
            raise ValueError("monodromy values must be nonzero")
        object.__setattr__(self, "values", vals)

    def power(self, n: int) -> np.ndarray:
        return self.values**n


def monodromy(c: UveClass) -> MonodromyChar:
    """``rho(gamma_k) = exp(phi(gamma_k))`` using the reduced representative."""
    return MonodromyChar(np.exp(c.reduced()))


# Hodge decomposition and the unitary section ----------------------------


@dataclass(frozen=True)
class HodgeSplit:
    linear: np.ndarray  # a with a(v) = sum a_l v_l
    antilinear: np.ndarray  # b with bbar(v) = sum b_l conj(v_l)
    linear_values: np.ndarray
    antilinear_values: np.ndarray
    residual: float

    def as_dict(self) -> dict:
        return {
            "linear": [[v.real, v.imag] for v in self.linear.tolist()],
            "antilinear": [[v.real, v.imag] for v in self.antilinear.tolist()],
            "residual": self.residual,
        }


def hodge_split(c: UveClass) -> HodgeSplit:
    """Solve ``phi(gamma) = a.gamma + b.conj(gamma)`` as a real ``4g x 4g`` system."""
    gens = c.lattice.generators
    g = c.lattice.g
    # unknowns (Re a, Im a, Re b, Im b); equations (Re, Im) per generator
    X, Y = gens.real, gens.imag
    top = np.hstack([X, -Y, X, Y])
    bottom = np.hstack([Y, X, -Y, X])
    M = np.vstack([top, bottom])
    rhs = np.concatenate([c.values.real, c.values.imag])
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as err:
        raise SingularLattice("Hodge system is singular") from err
    a = sol[:g] + 1j * sol[g : 2 * g]
    b = sol[2 * g : 3 * g] + 1j * sol[3 * g :]
    lin = gens @ a
    anti = np.conj(gens) @ b
    residual = float(np.max(np.abs(lin + anti - c.values)))
    return HodgeSplit(a, b, lin, anti, residual)


def in_max_compact(c: UveClass, tol: float = SOLVE_TOL) -> bool:
    """All ``|Re phi(gamma_k)| <= tol``: the character is unitary."""
    return bool(np.all(np.abs(c.values.real) <= tol))


@dataclass(frozen=True)
class UnitaryLift:
    lifted: UveClass
    linear: np.ndarray  # the holomorphic 1-form a subtracted from phi
    residual: float


def unitary_lift(c: UveClass) -> UnitaryLift:
    """The representative ``phi - a`` with ``a`` C-linear and purely imaginary periods.

    ``Re(a.gamma_k) = Re phi(gamma_k)`` is a real ``2g x 2g`` system; the
    lifted values have their (solved-to-zero) real parts set to exactly 0.
    """
    gens = c.lattice.generators
    g = c.lattice.g
    M = np.hstack([gens.real, -gens.imag])
    try:
        sol = np.linalg.solve(M, c.values.real)
    except np.linalg.LinAlgError as err:
        raise SingularLattice("unitary lift system is singular") from err
    a = sol[:g] + 1j * sol[g:]
    shifted = c.values - gens @ a
    residual = float(np.max(np.abs(shifted.real)))
    return UnitaryLift(UveClass(c.lattice, 1j * shifted.imag), a, residual)


# torsion ----------------------------------------------------------------


def _distance_to_2pi_i_z(w: np.ndarray) -> np.ndarray:
    im = w.imag
    return np.hypot(w.real, im - TWO_PI * np.round(im / TWO_PI))


def is_torsion(c: UveClass, n_max: int = N_MAX, tol: float = ROOT_TOL) -> Optional[int]:
    """Smallest ``N <= n_max`` with ``N phi(gamma_k)`` within ``N tol`` of ``2 pi i Z``."""
    phi = c.reduced()
    for start in range(1, n_max + 1, 4096):
        N = np.arange(start, min(start + 4096, n_max + 1))
        dist = _distance_to_2pi_i_z(N[:, None] * phi[None, :])
        ok = np.all(dist <= N[:, None] * tol, axis=1)
        if np.any(ok):
            return int(N[np.argmax(ok)])
    return None


def root_of_unity_order(rho: MonodromyChar, n_max: int = N_MAX, tol: float = ROOT_TOL) -> Optional[int]:
    """Smallest ``N`` with every ``rho_k^N`` within ``N tol`` of 1 (moduli and arguments)."""
    mod = np.abs(rho.values)
    if np.any(np.abs(np.log(mod)) > tol):
        return None
    turns = np.angle(rho.values) / TWO_PI
    N = np.arange(1, n_max + 1)
    frac = N[:, None] * turns[None, :]
    dist = TWO_PI * np.abs(frac - np.round(frac))
    ok = np.all(dist <= N[:, None] * tol, axis=1)
    return int(N[np.argmax(ok)]) if np.any(ok) else None


def nabla_tor_char(lattice: PeriodLattice, n: int, p: Sequence[int]) -> UveClass:
    """The class with ``phi(gamma_k) = 2 pi i p_k / n``."""
    if n < 1:
        raise ValueError("order must be positive")
    return UveClass(lattice, np.array([2j * math.pi * (int(pk) % n) / n for pk in p]))


@dataclass(frozen=True)
class SchneiderLangVerdict:
    criterion_applies: bool
    torsion_predicted: bool
    consistent: bool
    basis_determinant: float
    root_orders: tuple
    torsion_order: Optional[int]
    note: str = (
        "algebraicity of monodromy values is approximated by 'root of unity of order <= N_max'; "
        "the algebraicity of the connection itself is not modelled"
    )

    def as_dict(self) -> dict:
        return {
            "criterion_applies": self.criterion_applies,
            "torsion_predicted": self.torsion_predicted,
            "consistent": self.consistent,
            "basis_determinant": self.basis_determinant,
            "root_orders": list(self.root_orders),
            "torsion_order": self.torsion_order,
            "note": self.note,
        }


def schneider_lang_flag(c: UveClass, subset: Sequence[int], tol: float = ROOT_TOL, n_max: int = N_MAX) -> SchneiderLangVerdict:
    """Bookkeeping for the Schneider-Lang torsion criterion.

    ``subset`` indexes generators whose C-span must be all of ``C^g``; the
    criterion applies when it does and every ``rho(gamma)`` for ``gamma`` in
    ``subset`` is a root of unity.  ``consistent`` means
    criterion_applies implies torsion_predicted.
    """
    g = c.lattice.g
    subset = list(subset)
    if len(subset) < g:
        raise NotABasis(f"need at least g = {g} generators, got {len(subset)}")
    vecs = c.lattice.generators[subset]
    # largest normalized g x g minor (a single determinant when |S| = g)
    unit = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    sv = np.linalg.svd(unit, compute_uv=False)
    det = float(np.prod(sv[:g]))
    if not det > tol:
        raise NotABasis("chosen periods do not span C^g")
    rho = monodromy(c)
    orders = tuple(root_of_unity_order(MonodromyChar(rho.values[[k]]), n_max, tol) for k in subset)
    applies = all(o is not None for o in orders)
    order = is_torsion(c, n_max, tol)
    predicted = order is not None
    return SchneiderLangVerdict(applies, predicted, (not applies) or predicted, det, orders, order)


# real structures ----------------------------------------------------------


def conjugation_defect(c: UveClass) -> float:
    """Distance of ``s_k phi_pi(k) - conj(phi_k)`` to ``2 pi i Z``, maximized over k."""
    rs = c.lattice.real_structure
    if rs is None:
        raise NoRealStructure("lattice has no real structure")
    phi = c.values
    w = np.array([rs.signs[k] * phi[rs.perm[k]] - np.conj(phi[k]) for k in range(len(phi))])
    return float(np.max(_distance_to_2pi_i_z(w)))


@dataclass(frozen=True)
class RealMonodromyReport:
    invariant: bool
    conjugation_defect: float
    plus_values: tuple
    minus_values: tuple
    unitary: bool  # (i') all |rho| = 1
    plus_signs: bool  # (ii) rho on the fixed lattice lies in {1, -1}
    implication_holds: bool

    def as_dict(self) -> dict:
        enc = lambda vals: [[v.real, v.imag] for v in vals]  # noqa: E731
        return {
            "invariant": self.invariant,
            "conjugation_defect": self.conjugation_defect,
            "plus_values": enc(self.plus_values),
            "minus_values": enc(self.minus_values),
            "unitary": self.unitary,
            "plus_signs": self.plus_signs,
            "implication_holds": self.implication_holds,
        }


def real_monodromy_test(c: UveClass, tol: float = ROOT_TOL) -> RealMonodromyReport:
    """Monodromy on the real and imaginary period sublattices.

    For conjugation-invariant classes a unitary monodromy must take values
    ``+-1`` on the fixed sublattice.  The implication is reported as holding
    vacuously for classes that are not conjugation-invariant.
    """
    rs = c.lattice.real_structure
    if rs is None:
        raise NoRealStructure("lattice has no real structure")
    defect = conjugation_defect(c)
    invariant = defect <= tol
    plus = tuple(complex(cmath.exp(c.evaluate(v))) for v in rs.plus_basis())
    minus = tuple(complex(cmath.exp(c.evaluate(v))) for v in rs.minus_basis())
    rho = monodromy(c).values
    unitary = bool(np.all(np.abs(np.abs(rho) - 1.0) <= tol))
    signs = all(min(abs(v - 1), abs(v + 1)) <= tol for v in plus)
    holds = (not invariant) or (not unitary) or signs
    return RealMonodromyReport(invariant, defect, plus, minus, unitary, signs, holds)


@dataclass(frozen=True)
class DoubleReport:
    doubled: UveClass
    diagonal_monodromy: np.ndarray
    modulus_squared: np.ndarray
    residual: float
    span_determinant: float

    def as_dict(self) -> dict:
        return {
            "diagonal_monodromy": [[v.real, v.imag] for v in self.diagonal_monodromy.tolist()],
            "modulus_squared": self.modulus_squared.tolist(),
            "residual": self.residual,
            "span_determinant": self.span_determinant,
        }


def conjugate_double(c: UveClass) -> DoubleReport:
    """Class of ``pr^*(L) (x) pr_-^*(L_-)`` on ``Lambda + j(Lambda)`` in ``C^{2g}``.

    Generators are ``(gamma_k, 0)`` followed by ``(0, conj gamma_k)``; on the
    diagonal ``(gamma, conj gamma)`` the monodromy is ``|rho(gamma)|^2``.
    """
    gens = c.lattice.generators
    g = c.lattice.g
    zero = np.zeros_like(gens)
    doubled_gens = np.vstack([np.hstack([gens, zero]), np.hstack([zero, np.conj(gens)])])
    doubled = UveClass(PeriodLattice(doubled_gens), np.concatenate([c.values, np.conj(c.values)]))
    n = 2 * g
    diag_phi = np.array([doubled.values[k] + doubled.values[n + k] for k in range(n)])
    diag = np.exp(diag_phi)
    mod_sq = np.abs(np.exp(c.reduced())) ** 2
    residual = float(np.max(np.abs(diag - mod_sq) / np.maximum(1.0, mod_sq)))
    diag_vecs = np.hstack([gens, np.conj(gens)])
    unit = diag_vecs / np.linalg.norm(diag_vecs, axis=1, keepdims=True)
    span = float(abs(np.linalg.det(unit)))
    return DoubleReport(doubled, diag, mod_sq, residual, span)


# Weierstrass periods ------------------------------------------------------


def agm(a: float, b: float, tol: float = 1e-16) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    for _ in range(64):
        if abs(a - b) <= tol * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def real_roots(g2: float, g3: float) -> tuple:
    """Roots ``e1 > e2 > e3`` of ``4x^3 - g2 x - g3`` when all are real."""
    disc = g2**3 - 27.0 * g3**2
    if disc == 0 or abs(disc) <= 1e-14 * max(abs(g2) ** 3, 27.0 * g3**2, 1e-300):
        raise SingularCurve("discriminant vanishes")
    if disc < 0:
        raise ValueError("only the rectangular case (three real roots) is supported")
    # trigonometric solution of the depressed cubic x^3 - (g2/4) x - g3/4
    p = g2 / 4.0
    r = 2.0 * math.sqrt(p / 3.0)
    arg = max(-1.0, min(1.0, (g3 / 4.0) * 4.0 / r**3))
    t = math.acos(arg) / 3.0
    e = sorted((r * math.cos(t - 2.0 * math.pi * k / 3.0) for k in range(3)), reverse=True)
    return tuple(e)


def weierstrass_periods(g2: float, g3: float) -> PeriodLattice:
    """Real and imaginary fundamental periods of ``y^2 = 4x^3 - g2 x - g3`` by AGM."""
    e1, e2, e3 = real_roots(g2, g3)
    w_real = math.pi / agm(math.sqrt(e1 - e3), math.sqrt(e1 - e2))
    w_imag = 1j * math.pi / agm(math.sqrt(e1 - e3), math.sqrt(e2 - e3))
    rs = RealStructure((0, 1), (1, -1))
    return PeriodLattice(np.array([[w_real], [w_imag]]), rs)


def tau(lattice: PeriodLattice) -> complex:
    if lattice.g != 1:
        raise ValueError("tau is defined for g = 1")
    w1, w2 = lattice.generators[:, 0]
    t = complex(w2 / w1)
    return t if t.imag > 0 else -t


# benchmark classes ----------------------------------------------------------


def random_lattice(rng: np.random.Generator, g: int) -> PeriodLattice:
    while True:
        gens = rng.normal(size=(2 * g, g)) + 1j * rng.normal(size=(2 * g, g))
        try:
            return PeriodLattice(gens)
        except SingularLattice:
            continue


QUADRATIC_SURDS = (2, 3, 5, 6, 7, 10, 11, 13)


@dataclass(frozen=True)
class BenchmarkClass:
    cls: UveClass
    torsion: bool
    order: Optional[int]
    margin: float
    description: str


def irrationality_margin(theta: np.ndarray, n_max: int = N_MAX) -> float:
    """Largest ``min_{N <= n_max} N * ||N theta_k||`` over the coordinates ``theta_k``.

    One coordinate far from every rational of denominator ``<= n_max`` is
    enough to witness non-torsion.
    """
    N = np.arange(1, n_max + 1, dtype=float)
    best = 0.0
    for t in np.atleast_1d(theta):
        frac = N * t
        best = max(best, float(np.min(N * np.abs(frac - np.round(frac)))))
    return best


def torsion_benchmark(seed: int = 0, n_torsion: int = 25, n_free: int = 25, max_order: int = 12) -> list:
    """Classes with known ground truth.

    Torsion classes have ``phi = 2 pi i p / n`` with ``n <= max_order``.
    Half of the non-torsion classes are compact with a quadratic-irrational
    angle, the rest have nonzero real part and rational angles.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n_torsion):
        g = int(rng.integers(1, 3))
        lat = random_lattice(rng, g)
        n = int(rng.integers(1, max_order + 1))
        p = [int(x) for x in rng.integers(0, n, size=2 * g)]
        order = n // math.gcd(n, *p) if any(p) else 1
        out.append(BenchmarkClass(nabla_tor_char(lat, n, p), True, order, math.inf, f"2pi i {p}/{n}"))
    n_compact = (n_free + 1) // 2
    while len(out) < n_torsion + n_compact:
        g = int(rng.integers(1, 3))
        lat = random_lattice(rng, g)
        d = int(rng.choice(QUADRATIC_SURDS))
        a, c = int(rng.integers(0, 5)), int(rng.integers(2, 12))
        theta = (a + math.sqrt(d)) / c
        n = int(rng.integers(1, max_order + 1))
        p = [int(x) for x in rng.integers(0, n, size=2 * g)]
        k = int(rng.integers(0, 2 * g))
        turns = np.array(p, dtype=float) / n
        turns[k] = theta
        margin = irrationality_margin(np.array([theta]))
        N = np.arange(1, N_MAX + 1)
        gap = TWO_PI * np.abs(N * theta - np.round(N * theta))
        if margin < 1e-3 or np.any(gap <= N * ROOT_TOL):
            continue
        out.append(BenchmarkClass(UveClass(lat, 2j * math.pi * turns), False, None, margin, f"sqrt({d}) angle"))
    while len(out) < n_torsion + n_free:
        g = int(rng.integers(1, 3))
        lat = random_lattice(rng, g)
        n = int(rng.integers(1, max_order + 1))
        p = rng.integers(0, n, size=2 * g)
        re = np.zeros(2 * g)
        k = int(rng.integers(0, 2 * g))
        re[k] = float(rng.choice([-1, 1]) * rng.uniform(1e-3, 1.0))
        margin = float(np.max(np.abs(re)))
        out.append(BenchmarkClass(UveClass(lat, re + 2j * math.pi * p / n), False, None, margin, "non-unitary"))
    return out


def random_classes(seed: int, count: int = 100) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        g = int(rng.integers(1, 3))
        lat = random_lattice(rng, g)
        out.append(UveClass(lat, rng.normal(size=2 * g) + 1j * rng.uniform(-math.pi, math.pi, size=2 * g)))
    return out


def invariant_compact_classes(lattice: PeriodLattice | None = None) -> list:
    """Conjugation-invariant classes on the square lattice (compact and not)."""
    lattice = lattice or square_lattice()
    out = []
    for s in (0.0, math.pi):
        for t in (0.0, 0.37, 1.0, 2.5):
            out.append(UveClass(lattice, np.array([1j * s, 1j * t])))
    out.append(UveClass(lattice, np.array([0.5, 0.0])))
    out.append(UveClass(lattice, np.array([-0.2 + 1j * math.pi, 0.9j])))
    return out


# scenarios ------------------------------------------------------------------

TORUS_PREDICATES = ["monodromy", "hodge_split", "compact", "torsion", "unitary_lift", "schneider_lang", "conjugate_double"]


def class_from_json(payload) -> UveClass:
    lattice = PeriodLattice.from_json(payload["lattice"])
    return UveClass(lattice, np.array([_complex(v) for v in payload["phi"]]))


def _scenario(name, lattice, phi, subset, expect=None):
    payload = {"lattice": lattice.to_json(), "phi": [[complex(v).real, complex(v).imag] for v in phi], "subset": subset}
    if expect:
        payload["expect"] = expect
    preds = list(TORUS_PREDICATES)
    if lattice.real_structure is not None:
        preds.append("real_monodromy")
    return {"kind": "torus", "name": name, "seed": 0, "payload": payload, "predicates": preds}


def catalog_scenarios() -> dict:
    sq = square_lattice()
    lem = weierstrass_periods(4.0, 0.0)
    out = [
        _scenario("torus-square-2torsion", sq, [0, 1j * math.pi], [0], {"torsion_order": 2, "compact": True}),
        _scenario("torus-square-3torsion", sq, [2j * math.pi / 3, 4j * math.pi / 3], [0], {"torsion_order": 3, "compact": True}),
        _scenario("torus-square-irrational", sq, [0, 2j * math.pi * math.sqrt(2) / 10], [1], {"torsion_order": None, "compact": True}),
        _scenario("torus-square-nonunitary", sq, [0.3, 0], [0], {"torsion_order": None, "compact": False}),
        _scenario("torus-lemniscatic-real", lem, [1j * math.pi, 0.5j], [1], {"torsion_order": None, "compact": True}),
    ]
    return {s["name"]: s for s in out}
