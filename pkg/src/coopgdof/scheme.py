"""Scheme data model: sub-messages, codewords and per-receiver decoding plans."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .channel import ChannelParams, LevelBand
from .theorems import CoopBudget


class Msg(str, enum.Enum):
    W11p = "W11p"
    W11c = "W11c"
    W22p = "W22p"
    W22c = "W22c"
    W01p = "W01p"
    W02p = "W02p"
    W0c = "W0c"
    # undivided messages, decoded by their own receiver and optionally the other
    W11 = "W11"
    W22 = "W22"
    W01 = "W01"
    W02 = "W02"

    @property
    def owner(self) -> int:
        """User the message is intended for; 0 for the shared W0c."""
        if self is Msg.W0c:
            return 0
        return 1 if self.value[2] == "1" else 2

    @property
    def cooperative(self) -> bool:
        return self.value[1] == "0"

    @property
    def kind(self) -> str:
        """'p' private, 'c' common, 'u' undivided."""
        last = self.value[-1]
        return last if last in "pc" else "u"

    def swapped(self) -> "Msg":
        return _SWAP[self]


_SWAP = {
    Msg.W11p: Msg.W22p, Msg.W22p: Msg.W11p,
    Msg.W11c: Msg.W22c, Msg.W22c: Msg.W11c,
    Msg.W01p: Msg.W02p, Msg.W02p: Msg.W01p,
    Msg.W11: Msg.W22, Msg.W22: Msg.W11,
    Msg.W01: Msg.W02, Msg.W02: Msg.W01,
    Msg.W0c: Msg.W0c,
}

SubMessageId = Msg


@dataclass(frozen=True, slots=True)
class Placement:
    tx: int
    band: LevelBand


@dataclass(frozen=True, slots=True)
class Codeword:
    msg: Msg
    gdof: Fraction
    placements: tuple[Placement, ...]


@dataclass(frozen=True, slots=True)
class Step:
    """One decoding step: a single codeword (successive) or a joint MAC set."""

    msgs: tuple[Msg, ...]

    @property
    def joint(self) -> bool:
        return len(self.msgs) > 1

    def __str__(self) -> str:
        names = ",".join(m.value for m in self.msgs)
        return f"Joint{{{names}}}" if self.joint else names


def Successive(m: Msg) -> Step:  # noqa: N802 - reads like a constructor
    return Step((Msg(m),))


def JointMAC(ms: Iterable[Msg]) -> Step:  # noqa: N802
    return Step(tuple(Msg(m) for m in ms))


@dataclass(frozen=True, slots=True)
class DecodingPlan:
    rx: int
    steps: tuple[Step, ...]

    def decoded(self) -> list[Msg]:
        return [m for st in self.steps for m in st.msgs]


@dataclass(frozen=True)
class Scheme:
    params: ChannelParams
    budget: CoopBudget
    codewords: tuple[Codeword, ...]
    plans: tuple[DecodingPlan, DecodingPlan]
    claimed: tuple[Fraction, Fraction, Fraction, Fraction]
    w0c_share: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    case_id: str = ""

    def codeword(self, m: Msg) -> Codeword:
        for c in self.codewords:
            if c.msg is m:
                return c
        raise KeyError(m)

    def plan(self, rx: int) -> DecodingPlan:
        return self.plans[rx - 1]

    @property
    def total(self) -> Fraction:
        return sum(self.claimed, Fraction(0))


def tally(codewords: Iterable[Codeword], w0c_share: tuple[Fraction, Fraction]):
    """(d11, d22, d01, d02) implied by the codewords and the W0c attribution."""
    d = {1: Fraction(0), 2: Fraction(0)}
    d0 = {1: Fraction(w0c_share[0]), 2: Fraction(w0c_share[1])}
    for c in codewords:
        if c.msg is Msg.W0c:
            continue
        if c.msg.cooperative:
            d0[c.msg.owner] += c.gdof
        else:
            d[c.msg.owner] += c.gdof
    return (d[1], d[2], d0[1], d0[2])


def swap_scheme(s: Scheme, params: ChannelParams) -> Scheme:
    """Relabel users 1 <-> 2 throughout a scheme built on swapped parameters."""
    cws = tuple(
        Codeword(
            c.msg.swapped(),
            c.gdof,
            tuple(sorted((Placement(3 - pl.tx, pl.band) for pl in c.placements),
                         key=lambda pl: pl.tx)),
        )
        for c in s.codewords
    )
    plans = tuple(
        DecodingPlan(k, tuple(Step(tuple(m.swapped() for m in st.msgs))
                              for st in s.plan(3 - k).steps))
        for k in (1, 2)
    )
    d11, d22, d01, d02 = s.claimed
    return Scheme(
        params=params,
        budget=s.budget,
        codewords=cws,
        plans=plans,  # type: ignore[arg-type]
        claimed=(d22, d11, d02, d01),
        w0c_share=(s.w0c_share[1], s.w0c_share[0]),
        case_id=s.case_id,
    )


@dataclass
class SchemeBuilder:
    """Small helper for writing the scheme catalog compactly.

    Zero-gdof codewords are dropped, together with their decoding steps.
    """

    params: ChannelParams
    budget: CoopBudget
    case_id: str
    cws: list[Codeword] = field(default_factory=list)
    steps: dict[int, list[tuple[Msg, ...]]] = field(default_factory=lambda: {1: [], 2: []})

    def cw(self, msg: Msg, gdof, *placements: tuple[int, object, object]) -> "SchemeBuilder":
        g = Fraction(gdof)
        if g < 0:
            raise ArithmeticError(f"{self.case_id}: negative gdof {g} for {msg.value}")
        if g == 0:
            return self
        pls = tuple(Placement(tx, LevelBand(hi, lo)) for tx, hi, lo in placements)
        self.cws.append(Codeword(msg, g, pls))
        return self

    def rx(self, k: int, *steps: Union[Msg, tuple[Msg, ...]]) -> "SchemeBuilder":
        for st in steps:
            self.steps[k].append(st if isinstance(st, tuple) else (st,))
        return self

    def build(self, w0c_to_user1=None) -> Scheme:
        present = {c.msg for c in self.cws}
        plans = []
        for k in (1, 2):
            out = []
            for st in self.steps[k]:
                kept = tuple(m for m in st if m in present)
                if kept:
                    out.append(Step(kept))
            plans.append(DecodingPlan(k, tuple(out)))
        d0c = next((c.gdof for c in self.cws if c.msg is Msg.W0c), Fraction(0))
        if w0c_to_user1 is None:
            share1 = d0c / 2
        else:
            share1 = min(max(Fraction(w0c_to_user1), Fraction(0)), d0c)
        share = (share1, d0c - share1)
        return Scheme(
            params=self.params,
            budget=self.budget,
            codewords=tuple(self.cws),
            plans=tuple(plans),  # type: ignore[arg-type]
            claimed=tally(self.cws, share),
            w0c_share=share,
            case_id=self.case_id,
        )
