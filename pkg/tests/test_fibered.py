import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from arithatiyah import fibered as fb
from arithatiyah.errors import InconsistentInput, InvariantViolation, KernelAnomaly

I2 = fb.kodaira("I2")
I0S = fb.kodaira("I0*")
FLAGS_TRUE = {"power_alg_equiv_zero": True, "trace_point": True}

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def sympy_kernel(config):
    """Independent oracle: sympy's exact nullspace."""
    return sp.Matrix(config.q).nullspace()


# validate ----------------------------------------------------------------


@pytest.mark.parametrize("name", fb.KODAIRA_NAMES)
def test_kodaira_catalog_valid(name):
    assert fb.validate(fb.kodaira(name))["connected"]


@pytest.mark.parametrize(
    "n,q,condition",
    [
        ((1, 1), ((-2, -2), (-2, -2)), "off-diagonal-nonnegative"),
        ((1, 1), ((-2, 2), (1, -2)), "symmetric"),
        ((1, 1, 1, 1), ((-2, 2, 0, 0), (2, -2, 0, 0), (0, 0, -2, 2), (0, 0, 2, -2)), "connected"),
        ((1, 2), ((-2, 2), (2, -2)), "q.n = 0"),
        ((0, 1), ((0, 0), (0, 0)), "multiplicities"),
    ],
)
def test_invariant_violations(n, q, condition):
    with pytest.raises(InvariantViolation) as info:
        fb.validate(fb.FiberConfig(n, q))
    assert info.value.condition == condition


def test_shape_violation():
    with pytest.raises(InvariantViolation):
        fb.FiberConfig((1, 1), ((0,),))


# Zariski decomposition ---------------------------------------------------


def test_zariski_examples():
    assert fb.zariski_decompose(I2, [1, 1]).m0 == 1
    res = fb.zariski_decompose(I2, [1, -1])
    assert res.m0 is None and res.residual == (-4, 4)
    assert fb.zariski_decompose(I0S, [2, 2, 2, 2, 4]).m0 == 2


@given(st.sampled_from(fb.KODAIRA_NAMES), fractions)
def test_zariski_round_trip(name, m0):
    cfg = fb.kodaira(name)
    assert fb.zariski_decompose(cfg, [m0 * ni for ni in cfg.n]).m0 == m0


def test_floats_are_refused():
    with pytest.raises(TypeError):
        fb.zariski_decompose(I2, [0.5, 0.5])
    assert fb.as_fraction("3/4") == Fraction(3, 4)


# kernel lemma ----------------------------------------------------------------


@pytest.mark.parametrize("name", fb.KODAIRA_NAMES)
def test_kernel_matches_sympy_nullspace(name):
    cfg = fb.kodaira(name)
    proof = fb.kernel_rank_check(cfg, samples=20)
    oracle = sympy_kernel(cfg)
    assert len(oracle) == 1 == len(proof.kernel_basis)
    v = [Fraction(int(x.p), int(x.q)) for x in oracle[0]]
    k = next(i for i, x in enumerate(v) if x)
    assert [x / v[k] * cfg.n[k] for x in v] == list(proof.kernel_basis[0])
    assert list(proof.kernel_basis[0]) == list(cfg.n)
    assert proof.max_quadratic_value <= 0


@given(st.integers(3, 12), st.integers(0, 10**6))
def test_cycle_kernel_is_constant_vectors(k, seed):
    cfg = fb.cycle_config(k)
    assert fb.kernel_rank_check(cfg, 5, seed).kernel_basis == (tuple([Fraction(1)] * k),)


@given(st.sampled_from(fb.KODAIRA_NAMES), st.data())
def test_negativity_identity(name, data):
    cfg = fb.kodaira(name)
    m = data.draw(st.lists(fractions, min_size=cfg.r, max_size=cfg.r))
    lhs, rhs = fb.negativity_sides(cfg, m)
    assert lhs == rhs and lhs <= 0
    assert (lhs == 0) == (fb.zariski_decompose(cfg, m).m0 is not None)


def test_kernel_anomaly_on_bad_data():
    # two disjoint I2 blocks: a two-dimensional kernel
    q = ((-2, 2, 0, 0), (2, -2, 0, 0), (0, 0, -2, 2), (0, 0, 2, -2))
    with pytest.raises(KernelAnomaly):
        fb.kernel_rank_check(fb.FiberConfig((1, 1, 1, 1), q))


def test_rref_against_sympy():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(5)] for _ in range(4)]
        rows[3] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
        ours = fb.nullspace(rows)
        assert len(ours) == len(sp.Matrix(rows).nullspace())
        for v in ours:
            assert all(x == 0 for x in fb.matvec(rows, v))


# proportionality and VA ------------------------------------------------------


def test_proportionality_examples():
    assert fb.hodge_proportionality(fb.HodgeClassData(0, 0, 4, 4)).m == 1
    p = fb.hodge_proportionality(fb.HodgeClassData(-2, 0, 1, 4))
    assert not p.proportional and p.witnesses == {"b_hh": Fraction(-2)}
    assert fb.hodge_proportionality(fb.HodgeClassData(0, 0, 12, 4)).m == 3


def test_hodge_data_invariants():
    with pytest.raises(InvariantViolation):
        fb.HodgeClassData(0, 0, 1, 0)
    with pytest.raises(InvariantViolation):
        fb.HodgeClassData(0, 0, "1/2", 3)


def test_va_pullback_example():
    v = fb.va_verdict(fb.HodgeClassData(0, 0, 6, 3), [[0, 0]], FLAGS_TRUE)
    assert v.VA1 and v.VA2 and v.VA3 and v.m == 2 and v.power == 1


def test_va_ample_example():
    v = fb.va_verdict(fb.HodgeClassData(5, 3, 5, 3), [[1, 1]], FLAGS_TRUE)
    assert not (v.VA1 or v.VA2 or v.VA3)


def test_va_component_example():
    # beta = D_1 on I2: D_1^2 = -2, D_1.F = 0, degrees (q_11, q_21) = (-2, 2)
    v = fb.va_verdict(fb.HodgeClassData(-2, 0, 1, 2), [[-2, 2]], FLAGS_TRUE)
    assert not v.VA1 and not v.VA3
    assert fb.zariski_decompose(I2, [1, 0]).m0 is None


def test_va_inconsistent_input():
    with pytest.raises(InconsistentInput):
        fb.va_verdict(fb.HodgeClassData(0, 0, 2, 1), [[0, 0]], {"power_alg_equiv_zero": False, "trace_point": True})
    with pytest.raises(ValueError):
        fb.va_verdict(fb.HodgeClassData(0, 0, 2, 1), [[0, 0]], {"trace_point": True})


def test_va_nfp_variants_and_torsion_witness():
    v = fb.va_verdict(fb.HodgeClassData(0, 0, 1, 3), [[0, 0]], FLAGS_TRUE, nfp=True)
    assert v.m == Fraction(1, 3) and v.power == 3
    assert v.nfp == {"VA2'": True, "VA3'": True}


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_synthetic_datasets(seed):
    for ds in fb.va_datasets(seed, 5):
        v = fb.va_verdict(ds.data, ds.degs, ds.flags)
        assert v.VA1 == v.VA2 == v.VA3 == ds.expected


def test_fiber_json_round_trip():
    assert fb.FiberConfig.from_json(I0S.to_json()) == I0S
    assert fb.HodgeClassData.from_json(fb.HodgeClassData("1/2", 0, 3, 2).to_json()).b_hh == Fraction(1, 2)
