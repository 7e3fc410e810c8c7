from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from coopgdof.scheme import Codeword, Msg, Placement, SchemeBuilder
from coopgdof.synth import synthesize
from coopgdof.theorems import CoopBudget, Mode
from coopgdof.verify import StructuralError, mac_region_contains, verify
from mutations import decoding_margin, inflate, overlap_bands, with_gdof
from strategies import budgets, params


def _sinr(rep, rx):
    return [(f.lhs, f.rhs) for f in rep.findings if f.rx == rx and f.constraint.startswith("sinr")]


def test_worked_scheme_margins(worked):
    rep = verify(synthesize(worked, CoopBudget.half(5)))
    assert rep.ok
    assert _sinr(rep, 1) == [(1, 1), (1, 1), (3, 3)]
    assert [r for _, r in _sinr(rep, 2)] == [1, 1, 1]
    assert rep.totals == (0, 1, 4, 1)


def test_mac_region():
    assert not mac_region_contains([1, 2], [2, 5], 2)
    assert mac_region_contains([0, 0], [1, 4], 3)
    assert mac_region_contains([F(3, 2), F(3, 2)], [3, 3], 0)
    assert not mac_region_contains([F(3, 2), F(8, 5)], [3, 3], 0)


def test_zero_codeword_is_inert(worked):
    s = synthesize(worked, CoopBudget.half(5))
    extra = Codeword(Msg.W11c, F(0), (Placement(1, replace(s.codewords[0].placements[0].band)),))
    t = replace(s, codewords=s.codewords + (extra,))
    assert verify(t).findings == verify(s).findings


def test_overlap_is_reported(worked):
    s = overlap_bands(synthesize(worked, CoopBudget.half(5)))
    rep = verify(s)
    assert not rep.ok
    assert any(f.constraint.startswith("band-overlap") for f in rep.violations)


def test_wrong_claim_is_reported(worked):
    s = synthesize(worked, CoopBudget.half(5))
    rep = verify(replace(s, claimed=(F(1), *s.claimed[1:])))
    assert [f.constraint for f in rep.violations] == ["claimed-d11"]


def test_budget_and_coverage(worked):
    b = SchemeBuilder(worked, CoopBudget.half(1), "hand")
    b.cw(Msg.W01p, 2, (2, 2, None)).cw(Msg.W22, 1, (2, 0, 1))
    b.rx(1, Msg.W22, Msg.W01p).rx(2, Msg.W22, Msg.W01p)
    names = {f.constraint for f in verify(b.build()).violations}
    assert "budget:d01+d02<=pi" in names
    assert "coverage:forbidden:W01p" in names


def test_structural_errors(worked):
    s = synthesize(worked, CoopBudget.half(5))
    with pytest.raises(StructuralError):
        verify(replace(s, codewords=s.codewords + s.codewords[:1]))
    bad = Codeword(Msg.W22, F(1), (Placement(1, s.codewords[0].placements[0].band),
                                   Placement(2, s.codewords[0].placements[0].band)))
    with pytest.raises(StructuralError):
        verify(replace(s, codewords=(bad,)))


@settings(max_examples=60)
@given(params, budgets)
def test_monotone_in_rates(p, pi):
    s = synthesize(p, CoopBudget(Mode.HALF, pi))
    for c in s.codewords:
        assert verify(with_gdof(s, c.msg, c.gdof / 2)).ok
        margin = decoding_margin(s, c.msg)
        if margin is not None and margin == 0:
            assert not verify(with_gdof(s, c.msg, c.gdof + F(1, 1000))).ok
        assert not verify(inflate(s, c.msg, F(1, 1000))).ok
