import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from arithatiyah import tori
from arithatiyah.errors import NoRealStructure, NotABasis, SingularCurve, SingularLattice

SQ = tori.square_lattice()
TWO_PI_I = 2j * math.pi

angles = st.floats(-10, 10, allow_nan=False)
reals = st.floats(-2, 2, allow_nan=False)


def cls(values, lattice=SQ):
    return tori.UveClass(lattice, np.array(values, dtype=complex))


# worked examples -----------------------------------------------------------


def test_two_torsion_example():
    c = cls([0, 1j * math.pi])
    assert tori.is_torsion(c) == 2
    assert tori.in_max_compact(c)
    assert np.allclose(tori.monodromy(c).values, [1, -1])


def test_three_torsion_example():
    c = cls([TWO_PI_I / 3, 2 * TWO_PI_I / 3])
    assert tori.is_torsion(c) == 3
    assert tori.root_of_unity_order(tori.monodromy(c)) == 3


def _convergent_denominators(theta, limit):
    """Continued-fraction denominators of ``theta`` computed at 60 digits."""
    with mpmath.workdps(60):
        x = mpmath.mpf(theta)
        out, q_prev, q = [], 1, 0
        while True:
            a = int(mpmath.floor(x))
            q_prev, q = q, a * q + q_prev
            if q > limit:
                return out
            out.append(q)
            x = 1 / (x - a)


def test_irrational_example_against_continued_fractions():
    # theta = sqrt(2)/10 = (0 + sqrt(200))/100 with 100 | 200
    c = cls([0, TWO_PI_I * math.sqrt(2) / 10])
    assert tori.is_torsion(c) is None
    with mpmath.workdps(60):
        theta = mpmath.sqrt(2) / 10
    dens = [q for q in _convergent_denominators(theta, tori.N_MAX) if q > 0]
    # best approximations occur at convergent denominators
    gaps = [float(abs(q * theta - mpmath.nint(q * theta))) for q in dens]
    brute = np.abs(np.arange(1, tori.N_MAX + 1) * (math.sqrt(2) / 10))
    brute = np.abs(brute - np.round(brute))
    assert min(gaps) == pytest.approx(float(brute.min()), rel=1e-6)
    # no N <= N_max gets within N * tol of an integer multiple of 2 pi
    n = np.arange(1, tori.N_MAX + 1)
    assert np.all(2 * math.pi * brute > n * tori.ROOT_TOL)


def test_nonunitary_example():
    c = cls([0.3, 0])
    assert not tori.in_max_compact(c)
    assert tori.is_torsion(c) is None
    lift = tori.unitary_lift(c)
    assert tori.in_max_compact(lift.lifted, 0.0)


# properties ----------------------------------------------------------------


@given(reals, angles, angles, st.integers(-3, 3), st.integers(-3, 3))
def test_representative_independence(r, a, b, k, l):
    c = cls([r + 1j * a, 1j * b])
    d = cls(c.values + TWO_PI_I * np.array([k, l]))
    assert np.allclose(tori.monodromy(c).values, tori.monodromy(d).values, atol=1e-9)
    assert tori.in_max_compact(c, 1e-9) == tori.in_max_compact(d, 1e-9)
    assert np.allclose(np.exp(c.reduced()), np.exp(d.reduced()), atol=1e-9)


@given(st.integers(1, 12), st.lists(st.integers(0, 30), min_size=2, max_size=2), st.integers(-2, 2))
def test_nabla_tor_char_orders(n, p, shift):
    c = tori.nabla_tor_char(SQ, n, p)
    expected = n // math.gcd(n, *p) if any(x % n for x in p) else 1
    assert tori.is_torsion(c) == expected
    shifted = cls(c.values + TWO_PI_I * shift)
    assert tori.is_torsion(shifted) == expected
    assert np.allclose(tori.monodromy(c).power(expected), 1)


@given(reals, angles, reals, angles, reals, angles, reals, angles)
def test_unitary_lift_is_additive(r1, a1, r2, a2, r3, a3, r4, a4):
    lat = tori.elliptic_lattice(0.3 + 1.2j)
    c = cls([r1 + 1j * a1, r2 + 1j * a2], lat)
    d = cls([r3 + 1j * a3, r4 + 1j * a4], lat)
    lc, ld, lcd = (tori.unitary_lift(x) for x in (c, d, c + d))
    assert np.allclose(lcd.lifted.values, lc.lifted.values + ld.lifted.values, atol=1e-10)
    assert np.allclose(lcd.linear, lc.linear + ld.linear, atol=1e-10)
    assert tori.in_max_compact(lc.lifted, 0.0)


@given(reals, angles, reals, angles)
def test_hodge_split_reconstructs(r1, a1, r2, a2):
    lat = tori.elliptic_lattice(-0.4 + 0.9j)
    c = cls([r1 + 1j * a1, r2 + 1j * a2], lat)
    h = tori.hodge_split(c)
    assert h.residual < 1e-10
    assert np.allclose(lat.generators @ h.linear + np.conj(lat.generators) @ h.antilinear, c.values)


def test_unitary_classes_have_antilinear_part_minus_conjugate():
    # a purely imaginary character: phi = a.v - conj(a).conj(v)
    c = cls([0.7j, -1.3j])
    h = tori.hodge_split(c)
    assert np.allclose(h.antilinear, -np.conj(h.linear))


def test_genus_two_benchmark_classes():
    bench = tori.torsion_benchmark(0)
    assert len(bench) == 50
    for b in bench:
        order = tori.is_torsion(b.cls)
        assert (order is not None) == b.torsion
        if b.torsion:
            assert order == b.order


# Schneider-Lang bookkeeping --------------------------------------------------


def test_schneider_lang_square():
    v = tori.schneider_lang_flag(cls([0, 1j * math.pi]), [0])
    assert v.criterion_applies and v.torsion_predicted and v.consistent
    v = tori.schneider_lang_flag(cls([0.5j, 0]), [1, 0])
    assert v.consistent


def test_schneider_lang_not_a_basis():
    lat = tori.PeriodLattice(np.array([[1, 0], [0, 1], [1j, 0], [0, 1j]]))
    c = tori.UveClass(lat, np.zeros(4))
    with pytest.raises(NotABasis):
        tori.schneider_lang_flag(c, [0, 2])
    with pytest.raises(NotABasis):
        tori.schneider_lang_flag(c, [0])
    assert tori.schneider_lang_flag(c, [0, 1]).consistent


# reality -------------------------------------------------------------------


def test_real_structure_validation():
    with pytest.raises(NoRealStructure):
        tori.PeriodLattice(np.array([[1.0], [1j]]), tori.RealStructure((0, 1), (1, 1)))
    with pytest.raises(NoRealStructure):
        tori.RealStructure((1, 0), (1, -1))
    with pytest.raises(NoRealStructure):
        tori.real_monodromy_test(cls([0, 0], tori.square_lattice(False)))


def test_real_monodromy_on_invariant_classes():
    for c in tori.invariant_compact_classes():
        rep = tori.real_monodromy_test(c)
        assert rep.invariant and rep.implication_holds
        if rep.unitary:
            assert rep.plus_signs


def test_real_monodromy_non_invariant_is_vacuous():
    rep = tori.real_monodromy_test(cls([0.5j, 0]))
    assert not rep.invariant and rep.implication_holds


@given(reals, angles, reals, angles)
def test_conjugate_double_diagonal(r1, a1, r2, a2):
    c = cls([r1 + 1j * a1, r2 + 1j * a2])
    rep = tori.conjugate_double(c)
    assert rep.residual < 1e-10
    assert np.allclose(rep.modulus_squared, np.exp(2 * np.array([r1, r2])))


# periods -------------------------------------------------------------------


def _quad_periods(g2, g3):
    """Twice the integrals of dx/|y| over [e1, inf) and [e2, e1], at 30 digits."""
    with mpmath.workdps(30):
        roots = mpmath.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=60)
        e = sorted((mpmath.re(r) for r in roots), reverse=True)
        cubic = lambda x: 4 * x**3 - g2 * x - g3  # noqa: E731
        w_real = 2 * mpmath.quad(lambda x: 1 / mpmath.sqrt(abs(cubic(x))), [e[0], e[0] + 1, mpmath.inf])
        w_imag = 2 * mpmath.quad(lambda x: 1 / mpmath.sqrt(abs(cubic(x))), [e[1], e[0]])
        return float(w_real), float(w_imag)


@pytest.mark.parametrize("g2,g3", [(4.0, 0.0), (7.0, 1.0), (3.0, -0.5), (12.0, 2.0)])
def test_periods_against_quadrature(g2, g3):
    lat = tori.weierstrass_periods(g2, g3)
    wr, wi = _quad_periods(g2, g3)
    assert abs(lat.generators[0, 0] - wr) < 1e-12 * wr
    assert abs(lat.generators[1, 0] - 1j * wi) < 1e-12 * wi


def test_lemniscatic_square_ratio():
    lat = tori.weierstrass_periods(4.0, 0.0)
    assert tori.tau(lat) == pytest.approx(1j, abs=1e-14)


@pytest.mark.parametrize("lam", [0.5, 2.0, 3.7])
def test_period_scaling(lam):
    # (g2, g3) -> (lam^-4 g2, lam^-6 g3) scales the lattice by lam
    base = tori.weierstrass_periods(7.0, 1.0).generators
    scaled = tori.weierstrass_periods(7.0 / lam**4, 1.0 / lam**6).generators
    assert np.allclose(scaled, lam * base, rtol=1e-13)


def test_singular_and_unsupported_curves():
    with pytest.raises(SingularCurve):
        tori.weierstrass_periods(3.0, 1.0)
    with pytest.raises(ValueError):
        tori.weierstrass_periods(0.0, 1.0)


def test_singular_lattice():
    with pytest.raises(SingularLattice):
        tori.PeriodLattice(np.array([[1.0], [2.0]]))


def test_lattice_json_round_trip():
    lat = tori.weierstrass_periods(7.0, 1.0)
    back = tori.PeriodLattice.from_json(lat.to_json())
    assert np.array_equal(back.generators, lat.generators)
    assert back.real_structure == lat.real_structure


def test_schneider_lang_proxy_limitation():
    # rho(gamma_0) = -1 is a root of unity but the class is not torsion: the
    # root-of-unity proxy does not see algebraicity of the connection
    lat = tori.weierstrass_periods(4.0, 0.0)
    c = tori.UveClass(lat, np.array([1j * math.pi, 0.5j]))
    v = tori.schneider_lang_flag(c, [0])
    assert v.criterion_applies and not v.torsion_predicted and not v.consistent
    assert tori.schneider_lang_flag(c, [1]).consistent
