import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from arithatiyah import expr as ex
from arithatiyah import sexpr
from arithatiyah.errors import DomainError, ParseError
from arithatiyah.expr import Z, ZB

# random expression trees over the s-expression grammar
_leaf = st.sampled_from(["z", "(conj z)", "i", "1", "2", "-3", "1/2", "pi"])


def _node(children):
    un = st.tuples(st.sampled_from(["neg", "conj", "exp"]), children).map(lambda t: f"({t[0]} {t[1]})")
    bi = st.tuples(st.sampled_from(["add", "mul", "sub"]), children, children).map(
        lambda t: f"({t[0]} {t[1]} {t[2]})"
    )
    pw = st.tuples(children, st.integers(-2, 3)).map(lambda t: f"(pow (add {t[0]} 5) {t[1]})")
    return un | bi | pw


sexprs = st.recursive(_leaf, _node, max_leaves=6)


@given(sexprs)
def test_parse_dumps_round_trip(text):
    e = sexpr.parse(text)
    again = sexpr.parse(sexpr.dumps(e))
    assert sp.simplify(again - e) == 0


@given(sexprs)
def test_dumps_is_stable(text):
    s = sexpr.dumps(sexpr.parse(text))
    assert sexpr.dumps(sexpr.parse(s)) == s


def test_parse_basic():
    assert sexpr.parse("(div 1 (add 1 (mul z (conj z))))") == 1 / (1 + Z * ZB)
    assert sexpr.parse("(pow z -3)") == Z**-3
    assert sexpr.parse("(log z)") == sp.log(Z)


@pytest.mark.parametrize(
    "text",
    ["", "(add 1", ")", "(pow z 1/2)", "(frob z)", "(sub 1)", "(add 1) 2", "zz", "(exp 1 2)"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        sexpr.parse(text)


def test_conj_is_involution_and_swaps_symbols():
    e = (1 + 2 * sp.I) * Z**2 * ZB + sp.exp(sp.I * Z)
    assert sp.simplify(ex.conj(ex.conj(e)) - e) == 0
    assert ex.conj(Z) == ZB
    assert sp.expand(ex.conj(sp.I * Z) + sp.I * ZB) == 0


@given(sexprs, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_conj_matches_numerics(text, z0):
    e = sexpr.parse(text)
    try:
        a = complex(ex.evaluate(ex.conj(e), np.array([z0]))[0])
        b = complex(ex.evaluate(e, np.array([z0]))[0])
    except (DomainError, OverflowError, ZeroDivisionError):
        return
    if not (np.isfinite(a) and np.isfinite(b)):
        return
    assert abs(a - np.conj(b)) <= 1e-8 * max(1.0, abs(b))


def _fd_wirtinger(e, z0, h=1e-5):
    """Central differences: d/dz = (d/dx - i d/dy)/2, d/dzb = (d/dx + i d/dy)/2."""
    f = lambda w: complex(ex.evaluate(e, np.array([w]))[0])  # noqa: E731
    fx = (f(z0 + h) - f(z0 - h)) / (2 * h)
    fy = (f(z0 + 1j * h) - f(z0 - 1j * h)) / (2 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


@pytest.mark.parametrize(
    "e",
    [
        Z**2 * ZB,
        sp.log(1 + Z * ZB),
        sp.exp((Z + ZB) / (1 + Z * ZB)),
        (1 + Z * ZB) ** -3,
        sp.I * Z**3 - ZB**2 / (2 + Z),
    ],
)
def test_wirtinger_against_finite_differences(e):
    dz, dzb = ex.wirtinger(e)
    for z0 in (0.3 + 0.4j, -1.1 + 0.2j, 0.7 - 0.9j):
        fz, fzb = _fd_wirtinger(e, z0)
        assert abs(complex(ex.evaluate(dz, np.array([z0]))[0]) - fz) < 1e-7
        assert abs(complex(ex.evaluate(dzb, np.array([z0]))[0]) - fzb) < 1e-7


def test_holomorphy():
    assert ex.is_holomorphic(Z**3 + sp.exp(Z))
    assert not ex.is_holomorphic(Z * ZB)


def test_evaluate_guard_raises():
    with pytest.raises(DomainError):
        ex.evaluate(1 / Z, np.array([0.0]))
    with pytest.raises(DomainError):
        ex.evaluate(sp.log(Z), np.array([0.0]))
