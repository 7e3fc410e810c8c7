import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from coopgdof.channel import ChannelParams
from coopgdof.detsim import GrainedChannel, GridError, NotVerifiedError, grain_for, simulate
from coopgdof.sampling import sample_budgets, sample_params
from coopgdof.scheme import Msg
from coopgdof.synth import synthesize
from coopgdof.theorems import CoopBudget, Mode
from mutations import inflate, overlap_bands


def test_worked_scheme_unit_grain(worked):
    s = synthesize(worked, CoopBudget.half(5))
    r = simulate(s, g=1)
    assert r.ok
    assert GrainedChannel(worked, 1).rx_height(1) == 5
    assert r.per_message() == {Msg.W22: 1, Msg.W0c: 1, Msg.W01p: 3, Msg.W02p: 1}


def test_empty_scheme(worked):
    s = synthesize(worked, CoopBudget.half(5))
    e = replace(s, codewords=(), plans=tuple(replace(pl, steps=()) for pl in s.plans),
                claimed=(F(0),) * 4, w0c_share=(F(0), F(0)))
    r = simulate(e, g=1)
    assert r.ok and r.delivered == {} and r.expected == {}


def test_grain_doubling(worked):
    s = synthesize(worked, CoopBudget.half(F(7, 2)))
    g = grain_for(s)
    a, b = simulate(s, g=g), simulate(s, g=2 * g)
    assert a.ok and b.ok
    assert {k: 2 * v for k, v in a.delivered.items()} == b.delivered


def test_grid_errors(worked):
    s = synthesize(worked, CoopBudget.half(F(7, 2)))
    with pytest.raises(GridError):
        simulate(s, g=1)
    with pytest.raises(GridError):
        GrainedChannel(ChannelParams(F(1, 3), 1, 1, 1), 2)


def test_refuses_unverified(worked):
    s = overlap_bands(synthesize(worked, CoopBudget.half(5)))
    with pytest.raises(NotVerifiedError):
        simulate(s, g=1)


def test_overlap_collides(worked):
    s = overlap_bands(synthesize(worked, CoopBudget.half(5)))
    r = simulate(s, g=1, check=False)
    assert r.collisions and not r.ok


def test_inflated_rate_underdelivers(worked):
    s = synthesize(worked, CoopBudget.half(5))
    for c in s.codewords:
        bad = inflate(s, c.msg, F(1))
        r = simulate(bad, g=1, check=False)
        assert not r.ok, c.msg


def test_random_schemes_deliver():
    rng = random.Random(11)
    done = 0
    while done < 40:
        p = sample_params(rng, max_den=4, top=2)
        for b in sample_budgets(rng, p, rng.choice(list(Mode)), k=3):
            s = synthesize(p, b)
            if grain_for(s) > 24:
                continue
            r = simulate(s, seed=done)
            assert r.ok, (p, b, s.case_id, r.failed_steps)
            done += 1
