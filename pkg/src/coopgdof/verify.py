"""GDoF-level decoding checker for schemes.

Each receiver replays its plan. At a step, every codeword it has not yet
decoded and that is not part of the step acts as noise; the noise floor z is
the highest received top among them (and at least the thermal floor 0).
Successive steps need gdof <= top - z, joint steps need the polymatroid MAC
constraints over every subset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .channel import ChannelParams, band_top, pos
from .scheme import Codeword, Msg, Scheme, tally
from .theorems import CoopBudget, Mode


class StructuralError(ValueError):
    """The scheme is malformed; distinct from a scheme that fails its checks."""


@dataclass(frozen=True, slots=True)
class Finding:
    rx: int  # 0 for scheme-wide checks
    step: int  # -1 when not tied to a decoding step
    constraint: str
    lhs: Fraction
    rhs: Fraction

    @property
    def margin(self) -> Fraction:
        return self.rhs - self.lhs

    @property
    def violated(self) -> bool:
        return self.lhs > self.rhs


@dataclass
class VerificationReport:
    findings: list[Finding] = field(default_factory=list)
    totals: tuple[Fraction, Fraction, Fraction, Fraction] = (Fraction(0),) * 4  # type: ignore[assignment]

    @property
    def ok(self) -> bool:
        return not any(f.violated for f in self.findings)

    @property
    def violations(self) -> list[Finding]:
        return [f for f in self.findings if f.violated]

    def add(self, rx: int, step: int, constraint: str, lhs, rhs) -> None:
        if type(lhs) is not Fraction:
            lhs = Fraction(lhs)
        if type(rhs) is not Fraction:
            rhs = Fraction(rhs)
        self.findings.append(Finding(rx, step, constraint, lhs, rhs))


def received_top(c: Codeword, p: ChannelParams, rx: int) -> Optional[Fraction]:
    """Highest received exponent of the codeword at a receiver, None if absent."""
    tops = [band_top(pl.band, p.link(rx, pl.tx)) for pl in c.placements]
    tops = [t for t in tops if t is not None]
    return max(tops) if tops else None


def mac_region_contains(demands: Sequence[Fraction], tops: Sequence[Fraction], z: Fraction) -> bool:
    """Polymatroid GDoF MAC region: every subset T has sum(d_T) <= max(top_T) - z."""
    return not mac_violations(demands, tops, z)


def mac_violations(demands, tops, z) -> list[tuple[tuple[int, ...], Fraction, Fraction]]:
    out = []
    n = len(demands)
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            lhs = sum((Fraction(demands[i]) for i in idx), Fraction(0))
            rhs = pos(max(Fraction(tops[i]) for i in idx) - Fraction(z))
            if lhs > rhs:
                out.append((idx, lhs, rhs))
    return out


def required_at(rx: int, m: Msg) -> Optional[bool]:
    """True if receiver rx must decode m, False if it must not, None if optional."""
    other = 3 - rx
    if m is Msg.W0c or m.owner == rx:
        return True
    if m.owner == other:
        if m.kind == "c":
            return True
        if m.kind == "p":
            return False
        return None
    return None


def _check_structure(s: Scheme) -> dict[Msg, Codeword]:
    by_msg: dict[Msg, Codeword] = {}
    for c in s.codewords:
        if not isinstance(c.msg, Msg):
            raise StructuralError(f"unknown sub-message {c.msg!r}")
        if c.msg in by_msg:
            raise StructuralError(f"duplicate codeword for {c.msg.value}")
        if c.gdof < 0:
            raise StructuralError(f"negative gdof for {c.msg.value}")
        if not 1 <= len(c.placements) <= 2:
            raise StructuralError(f"{c.msg.value} needs one or two placements")
        txs = [pl.tx for pl in c.placements]
        if any(t not in (1, 2) for t in txs) or len(set(txs)) != len(txs):
            raise StructuralError(f"{c.msg.value} has invalid transmitter ids {txs}")
        if len(c.placements) == 2 and c.msg is not Msg.W0c:
            raise StructuralError(f"only W0c may be sent from both transmitters, not {c.msg.value}")
        for pl in c.placements:
            b = pl.band
            if b.hi < 0 or (b.lo is not None and b.lo < b.hi):
                raise StructuralError(f"{c.msg.value} has malformed band {b}")
        by_msg[c.msg] = c
    for k, plan in ((1, s.plans[0]), (2, s.plans[1])):
        if plan.rx != k:
            raise StructuralError(f"plan {k} is labelled for receiver {plan.rx}")
        seen: set[Msg] = set()
        for st in plan.steps:
            if not st.msgs:
                raise StructuralError(f"empty step in receiver {k} plan")
            for m in st.msgs:
                if m not in by_msg:
                    raise StructuralError(f"receiver {k} plan refers to missing codeword {m}")
                if m in seen:
                    raise StructuralError(f"receiver {k} decodes {m.value} twice")
                seen.add(m)
    if any(x < 0 for x in s.w0c_share):
        raise StructuralError("negative W0c attribution")
    return by_msg


def verify(s: Scheme, p: Optional[ChannelParams] = None, b: Optional[CoopBudget] = None) -> VerificationReport:
    p = p if p is not None else s.params
    b = b if b is not None else s.budget
    by_msg = _check_structure(s)
    rep = VerificationReport()
    live = {m: c for m, c in by_msg.items() if c.gdof > 0}

    # superposition layers at one transmitter must not overlap
    for tx in (1, 2):
        layers = [(m, pl.band) for m, c in live.items() for pl in c.placements if pl.tx == tx]
        for (m1, b1), (m2, b2) in combinations(layers, 2):
            if b1.overlaps(b2):
                rep.add(0, -1, f"band-overlap:Tx{tx}:{m1.value}/{m2.value}", 1, 0)

    d0c = by_msg[Msg.W0c].gdof if Msg.W0c in by_msg else Fraction(0)
    rep.add(0, -1, "w0c-attribution", sum(s.w0c_share, Fraction(0)), d0c)
    rep.add(0, -1, "w0c-attribution-min", d0c, sum(s.w0c_share, Fraction(0)))
    totals = tally(s.codewords, s.w0c_share)
    rep.totals = totals
    for name, got, want in zip(("d11", "d22", "d01", "d02"), s.claimed, totals):
        # two one-sided checks make equality a pair of margins
        rep.add(0, -1, f"claimed-{name}", got, want)
        rep.add(0, -1, f"claimed-{name}-min", want, got)

    d01, d02 = totals[2], totals[3]
    if b.mode is Mode.HALF:
        rep.add(0, -1, "budget:d01+d02<=pi", d01 + d02, b.pi)
    else:
        rep.add(0, -1, "budget:d01<=pi/2", d01, b.pi / 2)
        rep.add(0, -1, "budget:d02<=pi/2", d02, b.pi / 2)

    for k in (1, 2):
        plan = s.plan(k)
        decoded = set(plan.decoded())
        for m, c in live.items():
            need = required_at(k, m)
            if need is True and m not in decoded:
                rep.add(k, -1, f"coverage:missing:{m.value}", c.gdof, 0)
            elif need is False and m in decoded:
                rep.add(k, -1, f"coverage:forbidden:{m.value}", c.gdof, 0)
        done: set[Msg] = set()
        for i, st in enumerate(plan.steps):
            members = [m for m in st.msgs if m in live]
            if not members:
                done.update(st.msgs)
                continue
            z = Fraction(0)
            for m, c in live.items():
                if m in done or m in st.msgs:
                    continue
                t = received_top(c, p, k)
                if t is not None and t > z:
                    z = t
            tops = []
            for m in members:
                t = received_top(live[m], p, k)
                tops.append(t if t is not None else Fraction(-1))
            if len(members) == 1:
                rep.add(k, i, f"sinr:{members[0].value}", live[members[0]].gdof, pos(tops[0] - z))
            else:
                n = len(members)
                for r in range(1, n + 1):
                    for idx in combinations(range(n), r):
                        names = "+".join(members[j].value for j in idx)
                        lhs = sum((live[members[j]].gdof for j in idx), Fraction(0))
                        rhs = pos(max(tops[j] for j in idx) - z)
                        rep.add(k, i, f"mac:{names}", lhs, rhs)
            done.update(st.msgs)
    return rep


def verify_all(schemes: Iterable[Scheme]) -> list[VerificationReport]:
    return [verify(s) for s in schemes]
