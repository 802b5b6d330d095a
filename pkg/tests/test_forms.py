import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from arithatiyah.errors import BidegreeError
from arithatiyah.expr import Z, ZB
from arithatiyah.forms import (
    Form,
    conjugation_symmetric,
    d,
    d_function,
    del_,
    delbar,
    dlog,
    pullback,
    standard_p1_cover,
    three_chart_p1_cover,
    wedge,
)

polys = st.lists(st.integers(-3, 3), min_size=6, max_size=6).map(
    lambda c: c[0] + c[1] * Z + c[2] * ZB + c[3] * Z * ZB + c[4] * Z**2 + c[5] * ZB**2 * Z
)


def test_delbar_of_zzbar_dz():
    # delbar(z zb dz) = d(z zb)/dzb dzb ^ dz = -z dz ^ dzb
    f = Form.one_form(dz=Z * ZB)
    assert delbar(f).equals(Form.two_form(-Z))
    assert del_(Form.one_form(dzb=Z * ZB)).equals(Form.two_form(ZB))


def test_delbar_of_dlog_fubini_study():
    # dzb ^ dz = -dz ^ dzb fixes the sign
    f = Form.one_form(dz=ZB / (1 + Z * ZB))
    assert delbar(f).simplify().equals(Form.two_form(-1 / (1 + Z * ZB) ** 2))


@given(polys)
def test_d_squared_is_zero(p):
    assert d(d(Form.function(p))).is_zero()


@given(polys)
def test_del_delbar_anticommute(p):
    f = Form.function(p)
    assert (del_(delbar(f)) + delbar(del_(f))).is_zero()


@given(polys, polys)
def test_leibniz(p, q):
    lhs = d_function(p * q)
    rhs = d_function(p) * q + d_function(q) * p
    assert lhs.simplify().equals(rhs)


@given(polys, polys)
def test_wedge_antisymmetric_for_scalars(p, q):
    a = Form.one_form(dz=p, dzb=q)
    b = Form.one_form(dz=q, dzb=p + 1)
    assert (wedge(a, b) + wedge(b, a)).is_zero()


def test_wedge_bidegree_overflow():
    with pytest.raises(BidegreeError):
        wedge(Form.two_form(1), Form.one_form(dz=1))
    with pytest.raises(BidegreeError):
        Form({"dzdz": 1})


def test_matrix_wedge_keeps_order():
    a = Form.one_form(dz=sp.Matrix([[0, 1], [0, 0]]))
    b = Form.one_form(dzb=sp.Matrix([[0, 0], [1, 0]]))
    assert wedge(a, b).coeff("dzdzb") == sp.Matrix([[1, 0], [0, 0]])
    assert wedge(b, a).coeff("dzdzb") == sp.Matrix([[0, 0], [0, -1]])


def test_dlog_power():
    assert dlog(Z**-3).equals(Form.one_form(dz=-3 / Z))
    assert dlog(1 + Z * ZB).equals(Form.one_form(dz=ZB / (1 + Z * ZB), dzb=Z / (1 + Z * ZB)))


@given(polys, st.integers(1, 3))
def test_pullback_commutes_with_d(p, k):
    t = Z**k + 2 * Z
    lhs = pullback(d_function(p), t)
    rhs = d_function(p.subs({Z: t, ZB: ZB**k + 2 * ZB}, simultaneous=True))
    assert lhs.simplify().equals(rhs.simplify())


def test_pullback_functorial():
    f = Form.one_form(dz=Z * ZB, dzb=Z)
    s, t = Z**2, Z + 1
    # (s o t)^* = t^* s^*
    lhs = pullback(f, s.subs(Z, t))
    rhs = pullback(pullback(f, s), t)
    assert lhs.simplify().equals(rhs.simplify())


def test_numeric_evaluate_shape():
    f = Form.one_form(dz=sp.Matrix([[Z], [ZB]]))
    vals = f.evaluate([1j, 2.0])
    assert vals["dz"].shape == (2, 2, 1)
    assert vals["dz"][0, 1, 0] == pytest.approx(-1j)
    assert "dzb" not in vals


def test_one_form_zero_expands_to_shape():
    f = Form.one_form(dz=sp.zeros(2, 1), dzb=0)
    assert f.shape == (2, 1)
    with pytest.raises(ValueError):
        Form.one_form(dz=sp.zeros(2, 1), dzb=sp.ones(1, 2))


@pytest.mark.parametrize("factory", [standard_p1_cover, three_chart_p1_cover])
def test_cover_transitions_compose(factory):
    cover = factory()
    assert cover.check_transitions() < 1e-10


def test_cover_grids_are_deterministic():
    a, b = standard_p1_cover(seed=4), standard_p1_cover(seed=4)
    assert np.array_equal(a.points((0, 1)), b.points((0, 1)))
    assert not np.array_equal(a.points((0, 1)), standard_p1_cover(seed=5).points((0, 1)))


def test_conjugation_symmetry():
    pts = standard_p1_cover().points((0, 1))
    assert conjugation_symmetric(Form.one_form(dz=1 / (1 + Z * ZB)), pts, 1e-12)
    assert not conjugation_symmetric(Form.one_form(dz=sp.I * Z), pts, 1e-12)
