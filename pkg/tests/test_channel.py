from fractions import Fraction as F

import pytest
from hypothesis import given

from coopgdof.channel import (
    ChannelParams,
    LevelBand,
    Regime,
    admissible_regimes,
    band_top,
    classify_regime,
    d_2e,
    d_3e,
    d_bc,
    d_ic,
    to_rational,
)
from strategies import gammas, params


@pytest.mark.parametrize("alpha,regime", [
    ((1, 1, "0.5", "0.5"), Regime.WEAK),
    ((2, 2, 5, 3), Regime.STRONG),
    ((1, "0.8", "1.5", "0.6"), Regime.MIXED),
    ((1, 1, 1, 1), Regime.WEAK),
])
def test_classify(alpha, regime):
    assert classify_regime(ChannelParams(*alpha)) is regime


def test_boundary_admits_both():
    assert set(admissible_regimes(ChannelParams(1, 1, 1, 1))) == set(Regime)
    assert admissible_regimes(ChannelParams(1, 1, F(1, 2), F(1, 2))) == [Regime.WEAK]


@pytest.mark.parametrize("alpha,ic,bc", [
    ((2, 2, 5, 3), 3, 6),
    (("1.2", 1, 2, "1.8"), F(9, 5), F(13, 5)),
    ((0, 0, 0, 0), 0, 0),
    ((1, 1, F(2, 3), F(2, 3)), F(4, 3), F(4, 3)),
])
def test_ic_bc_values(alpha, ic, bc):
    p = ChannelParams(*alpha)
    assert d_ic(p) == ic
    assert d_bc(p) == bc


def test_multi_level_terms(worked):
    assert d_2e(worked) == 8
    assert d_3e(worked) == 13
    assert d_3e(ChannelParams("1.2", 1, 2, "1.8")) == 6


def test_exact_conversion():
    assert to_rational(0.1) == F(1, 10)
    assert to_rational("3/7") == F(3, 7)
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(ValueError):
        ChannelParams(-1, 0, 0, 0)


def test_band_top():
    assert band_top(LevelBand(0, 2), 5) == 5
    assert band_top(LevelBand(2), 5) == 3
    assert band_top(LevelBand(1, 1), 7) is None
    with pytest.raises(ValueError):
        LevelBand(2, 1)


def test_band_overlap_is_open():
    assert not LevelBand(0, 1).overlaps(LevelBand(1, 2))
    assert LevelBand(0, 2).overlaps(LevelBand(1))
    assert not LevelBand(1, 1).overlaps(LevelBand(0))
    assert LevelBand(0, 3).width == 3 and LevelBand(2).width is None


@given(params)
def test_cooperation_never_hurts(p):
    assert d_ic(p) <= d_bc(p)


@given(params, gammas)
def test_homogeneous(p, g):
    q = p.scaled(g)
    for f in (d_ic, d_bc, d_2e, d_3e):
        assert f(q) == g * f(p)


@given(params)
def test_swap_invariant(p):
    q = p.swapped()
    for f in (d_ic, d_bc, d_2e, d_3e):
        assert f(q) == f(p)
