import warnings

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from arithatiyah import atiyah as at
from arithatiyah import catalog as cat
from arithatiyah import cech
from arithatiyah.errors import CoverMismatch, GluingError, QuadratureWarning, RankError
from arithatiyah.expr import Z, ZB
from arithatiyah.forms import Form, standard_p1_cover

COVER = standard_p1_cover()

small = st.integers(-2, 2)
poly = st.tuples(small, small, small).map(lambda c: c[0] + c[1] * Z + c[2] * Z * ZB)
nonzero_poly = st.tuples(st.integers(1, 3), small, small).map(lambda c: c[0] + c[1] * Z + c[2] * Z**2)


# jets ----------------------------------------------------------------------


@given(nonzero_poly, nonzero_poly, poly, poly, poly)
def test_jet_module_law(lam, mu, f, w0, w1):
    """(lam mu).j = lam.(mu.j), 1.j = j, and lam.j matches [lam f, lam w - f dlam]."""
    j = at.Jet(sp.ImmutableMatrix([[f], [f * Z]]), Form.one_form(dz=sp.Matrix([[w0], [w1]])))
    assert j.scale(lam * mu).equals(j.scale(mu).scale(lam))
    assert j.scale(1).equals(j)
    by_hand = at.Jet(
        sp.ImmutableMatrix(j.value * lam),
        Form.one_form(dz=sp.Matrix([[lam * w0 - f * sp.diff(lam, Z)], [lam * w1 - f * Z * sp.diff(lam, Z)]])),
    )
    assert j.scale(lam).equals(by_hand)


@given(nonzero_poly, poly)
def test_splitting_is_linear(lam, f):
    """s(lam f) = lam.s(f): the splitting is a morphism of left modules."""
    theta = sp.Matrix([[ZB / (1 + Z * ZB)]])
    s = at.splitting(theta)
    v = sp.Matrix([[f]])
    assert s(v * lam).equals(s(v).scale(lam))


# cocycles ------------------------------------------------------------------


@pytest.mark.parametrize("n", list(cat.FS_RANGE))
def test_fubini_study_cocycle_closed_form(n):
    c = at.atiyah_cocycle(cat.fubini_study(n, COVER))
    assert c.alpha[(0, 1)].simplify().equals(Form.one_form(dz=n / Z))
    for i in (0, 1):
        assert c.beta[(i,)].simplify().equals(Form.one_form(dz=n * ZB / (1 + Z * ZB)))
    assert cech.is_cone_cocycle(c).ok
    h = at.c1_hodge(cat.fubini_study(n, COVER))
    # the scalar class has the same coefficients as the End(E) one
    assert h.alpha[(0, 1)].scalar("dz") == c.alpha[(0, 1)].coeff("dz")[0, 0]


def test_three_chart_cocycle():
    data = cat.fubini_study_3chart(2)
    assert data.validate().ok
    assert cech.is_cone_cocycle(at.atiyah_cocycle(data)).ok


@pytest.mark.parametrize("data", cat.rank2_bundles(COVER)[:2], ids=lambda d: d.name)
def test_rank2_cocycle_and_trace(data):
    assert data.validate().ok
    c = at.atiyah_cocycle(data)
    assert cech.is_cone_cocycle(c).ok
    assert at.trace_reduce(c).equals(at.c1_hodge(at.determinant(data)))


def test_split_rank2_is_direct_sum():
    c = at.atiyah_cocycle(cat.split_rank2(1, -2, COVER))
    a1, a2 = at.c1_hodge(cat.fubini_study(1, COVER)), at.c1_hodge(cat.fubini_study(-2, COVER))
    assert c.alpha[(0, 1)].coeff("dz") == sp.diag(a1.alpha[(0, 1)].scalar("dz"), a2.alpha[(0, 1)].scalar("dz"))


def test_c1_hodge_rank_error():
    with pytest.raises(RankError):
        at.c1_hodge(cat.split_rank2(1, 1, COVER))


def test_bundle_validation_detects_bad_metric():
    bad = at.HermitianBundleData(COVER, 1, {(0, 1): [[Z**-1]]}, {0: [[1 + Z * ZB]], 1: [[1 + Z * ZB]]})
    assert not bad.validate().ok
    assert not at.check_cocycle(bad).ok


def test_connection_cocycle_with_non_chern_connection():
    data = cat.fubini_study(1, COVER)
    # theta_0 = 0 and theta_1 = -1/z glue: f^{-1} df = -dz/z in chart 0 terms
    c = at.connection_cocycle(data, {0: sp.Matrix([[0]]), 1: sp.Matrix([[0]])})
    assert not cech.is_cone_cocycle(c).ok


# curvature and degree ----------------------------------------------------


@pytest.mark.parametrize("data", cat.rank1_bundles(COVER) + cat.rank2_bundles(COVER)[:2], ids=lambda d: d.name)
def test_curvature_identity(data):
    rep = at.verify_curvature_identity(data)
    assert rep["residual"] <= 1e-10


def test_curvature_fubini_study_closed_form():
    forms, res = at.curvature(cat.fubini_study(1, COVER))
    assert res < 1e-10
    assert forms[0].simplify().equals(Form.two_form(1 / (1 + Z * ZB) ** 2))


@pytest.mark.parametrize("n", list(cat.FS_RANGE))
def test_chern_number_fubini_study(n):
    with warnings.catch_warnings():
        warnings.simplefilter("error", QuadratureWarning)
        assert abs(at.chern_number(cat.fubini_study(n, COVER)) - n) < 1e-6


def test_chern_number_trivial_and_tensor():
    assert abs(at.chern_number(cat.trivial_exp_metric(COVER))) < 1e-6
    prod = at.tensor(cat.fubini_study(1, COVER), cat.fubini_study(-1, COVER))
    assert abs(at.chern_number(prod)) < 1e-6
    assert abs(at.chern_number(cat.split_rank2(1, -2, COVER)) + 1) < 1e-6


@pytest.mark.parametrize("d", [1, 2, 3])
def test_chern_number_of_pullback(d):
    maps = {0: Z**d, 1: Z**d}
    pulled = at.pullback_bundle(cat.fubini_study(1, COVER), maps)
    assert abs(at.chern_number(pulled) - d) < 1e-6
    assert at.check_pullback_law(cat.fubini_study(2, COVER), maps)


def test_quadrature_warning_on_inconsistent_metric():
    bad = at.HermitianBundleData(COVER, 1, {(0, 1): [[Z**-1]]}, {0: [[1 / (1 + Z * ZB)]], 1: [[(1 + Z * ZB) ** -2]]})
    with pytest.raises(GluingError):
        at.curvature(bad)
    with pytest.warns(QuadratureWarning):
        at.chern_number(bad)


def test_bump_partition():
    import numpy as np

    r = np.array([0.0, 0.5, 0.8, 1.0, 1.2, 2.0])
    b = at.bump(r)
    assert b[0] == b[1] == b[2] == 1.0 and b[4] == b[5] == 0.0
    assert 0 < b[3] < 1
    assert np.all(np.diff(at.bump(np.linspace(0.8, 1.2, 50))) <= 0)


# functoriality -------------------------------------------------------------


@pytest.mark.parametrize("a,b", [(1, 2), (-3, 1), (0, -1)])
def test_tensor_and_dual_laws(a, b):
    L, M = cat.fubini_study(a, COVER), cat.fubini_study(b, COVER)
    assert at.check_tensor_law(L, M)
    assert at.check_dual_law(L)


def test_tensor_needs_same_cover():
    with pytest.raises(CoverMismatch):
        at.tensor(cat.fubini_study(1, COVER), cat.fubini_study(1, standard_p1_cover(seed=3)))


def test_pullback_rejects_non_cover_map():
    with pytest.raises(CoverMismatch):
        at.pullback_bundle(cat.fubini_study(1, COVER), {0: Z + 1, 1: Z})


def test_metric_rescaling():
    phi = (Z + ZB) / (1 + Z * ZB)
    data = at.metric_rescaling(COVER, {0: phi, 1: phi})
    c = at.c1_hodge(data)
    assert c.alpha[(0, 1)].is_zero()
    for i in (0, 1):
        assert c.beta[(i,)].simplify().equals(Form.one_form(dz=-sp.diff(phi, Z)))
    assert cech.is_cone_cocycle(c).ok


def test_bundle_json_round_trip():
    data = cat.triangular_rank2(2, 1, COVER)
    back = at.bundle_from_json(at.bundle_to_json(data), COVER)
    assert back.rank == 2
    a, b = at.atiyah_cocycle(back), at.atiyah_cocycle(data)
    assert a.alpha[(0, 1)].equals(b.alpha[(0, 1)])
    assert all(a.beta[(i,)].equals(b.beta[(i,)]) for i in COVER.charts)
