from fractions import Fraction as F

import pytest
from hypothesis import given

from coopgdof.channel import ChannelParams, Regime, admissible_regimes, classify_regime, d_bc, d_ic
from coopgdof.theorems import (
    B_3E,
    CoopBudget,
    Mode,
    SplitBudget,
    converse_bounds,
    curve,
    general_converse,
    lambdas,
    pi_plus,
    pi_star,
    sum_gdof,
    threshold_oracle,
)
from strategies import budgets, gammas, params


def test_worked_half(worked):
    v, bs = sum_gdof(worked, CoopBudget.half(4))
    assert v == F(17, 3)
    assert bs.active == (B_3E,)
    assert bs.as_dict()["IC+π"] == 7


def test_worked_full(worked):
    assert sum_gdof(worked, CoopBudget.full(4))[0] == 5


def test_thresholds(worked, slopes_point):
    assert pi_star(worked) == 5
    assert pi_plus(worked) == 6
    assert pi_star(slopes_point) == F(9, 5)
    assert pi_plus(slopes_point) == F(9, 5)
    for a in (F(2, 3), F(5, 6), 1):
        assert pi_star(ChannelParams(1, 1, a, a)) == 0


def test_slope_point_values(slopes_point):
    assert sum_gdof(slopes_point, CoopBudget.half(1))[0] == F(7, 3)
    # the min(a12, a21) + pi/2 bound is tight here in full duplex
    assert sum_gdof(slopes_point, CoopBudget.full(1))[0] == F(23, 10)


def test_slope_point_curves(slopes_point):
    h = curve(slopes_point, Mode.HALF)
    assert [x for x, _ in h.breakpoints] == [0, F(1, 5), F(3, 5), F(9, 5)]
    assert [y for _, y in h.breakpoints] == [F(9, 5), 2, F(11, 5), F(13, 5)]
    assert h.slopes == (1, F(1, 2), F(1, 3), 0)
    f = curve(slopes_point, Mode.FULL)
    assert [x for x, _ in f.breakpoints] == [0, F(6, 5), F(9, 5)]
    assert f.slopes == (F(1, 2), F(1, 3), 0)


def test_weak_curve_shape():
    p = ChannelParams(2, 2, F(1, 2), 1)
    c = curve(p, Mode.HALF)
    assert c.slopes == (1, 0)
    assert c.saturation_point == d_bc(p) - d_ic(p) == pi_star(p)


def test_split_converse(worked):
    assert general_converse(worked, SplitBudget(5, 0)) == 5
    assert general_converse(worked, SplitBudget(0, 0)) == d_ic(worked)


def test_lambdas_mixed():
    p = ChannelParams(1, F("0.8"), F("1.5"), F("0.6"))
    assert set(lambdas(p)) == {d_ic(p), d_bc(p)}


def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        CoopBudget.half(-1)


def test_large_cross_links_limit():
    for k in (10, 100):
        p = ChannelParams(2, 1, 2 * k + 1, 2 * k)
        for pi in (F(0), F(1, 2), F(3)):
            assert sum_gdof(p, CoopBudget.half(pi))[0] == 3 + pi


@given(params, budgets)
def test_zero_and_saturated(p, pi):
    for mode, cap in ((Mode.HALF, pi_star(p)), (Mode.FULL, pi_plus(p))):
        assert sum_gdof(p, CoopBudget(mode, 0))[0] == d_ic(p)
        assert sum_gdof(p, CoopBudget(mode, cap + pi))[0] == d_bc(p)


@given(params, budgets)
def test_curve_matches_pointwise(p, pi):
    for mode in Mode:
        assert curve(p, mode)(pi) == sum_gdof(p, CoopBudget(mode, pi))[0]


@given(params)
def test_thresholds_match_oracle(p):
    assert pi_star(p) == threshold_oracle(p, Mode.HALF) == curve(p, Mode.HALF).saturation_point
    assert pi_plus(p) == threshold_oracle(p, Mode.FULL) == curve(p, Mode.FULL).saturation_point


def _with_regime(tag, fn):
    from coopgdof import theorems

    orig = theorems.classify_regime
    theorems.classify_regime = lambda _p: tag
    try:
        return fn()
    finally:
        theorems.classify_regime = orig


def test_boundary_tags_agree():
    # grid of boundary points: cross link equal to a direct link somewhere
    pts = []
    for a in range(0, 7):
        for b in range(0, 7):
            for c in range(0, 7):
                pts += [ChannelParams(a, b, c, min(a, b)), ChannelParams(a, b, max(a, b), c)]
    checked = 0
    for p in pts:
        tags = admissible_regimes(p)
        if len(tags) < 2:
            continue
        checked += 1
        for mode in Mode:
            for pi in (F(0), F(1, 3), F(1), F(5, 2), F(9)):
                b = CoopBudget(mode, pi)
                vals = {_with_regime(t, lambda: sum_gdof(p, b)[0]) for t in tags}
                assert len(vals) == 1, (p, b, tags, vals)
    assert checked > 100


@given(params, budgets, gammas)
def test_homogeneity(p, pi, g):
    for mode in Mode:
        assert sum_gdof(p.scaled(g), CoopBudget(mode, g * pi))[0] == g * sum_gdof(p, CoopBudget(mode, pi))[0]


@given(params, budgets)
def test_weak_and_symmetric_modes_agree(p, pi):
    sym = ChannelParams(p.a11, p.a11, p.a12, p.a12)
    assert sum_gdof(sym, CoopBudget.half(pi))[0] == sum_gdof(sym, CoopBudget.full(pi))[0]
    if classify_regime(p) is Regime.WEAK:
        assert sum_gdof(p, CoopBudget.half(pi))[0] == sum_gdof(p, CoopBudget.full(pi))[0]


@given(params, budgets)
def test_full_is_even_split(p, pi):
    if classify_regime(p) is Regime.STRONG:
        assert general_converse(p, SplitBudget(pi / 2, pi / 2)) == sum_gdof(p, CoopBudget.full(pi))[0]


def _best_split(p, pi):
    """Exact max over pi01 + pi02 = pi of the split converse.

    Each bound is linear in pi01 along the segment, so the max of their min
    sits at an endpoint or at a crossing of two bounds.
    """
    def entries(t):
        return [v for _, v in converse_bounds(p, SplitBudget(t, pi - t)).entries]

    e0, e1 = entries(F(0)), entries(pi)
    lines = [(a, (b - a) / pi if pi else F(0)) for a, b in zip(e0, e1)]
    cands = {F(0), pi}
    for i, (a1, s1) in enumerate(lines):
        for a2, s2 in lines[i + 1:]:
            if s1 != s2:
                t = (a2 - a1) / (s1 - s2)
                if 0 <= t <= pi:
                    cands.add(t)
    return max(general_converse(p, SplitBudget(t, pi - t)) for t in cands)


@given(params, budgets)
def test_half_is_best_split(p, pi):
    assert _best_split(p, pi) == sum_gdof(p, CoopBudget.half(pi))[0]
