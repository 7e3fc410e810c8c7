"""Sum-GDoF with limited transmitter cooperation.

Every bound is a line a + b*pi in the cooperation budget, so the sum-GDoF
is a concave piecewise-linear function of pi. Values are exact rationals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .channel import (
    ChannelParams,
    Regime,
    RationalLike,
    classify_regime,
    d_2e,
    d_3e,
    d_bc,
    d_ic,
    pos,
    to_rational,
)

HALF_ = Fraction(1, 2)
THIRD = Fraction(1, 3)

# bound identifiers
B_IC = "IC+π"
B_IC_HALF = "IC+π/2"
B_2E = "(D_2e+π)/2"
B_MINCROSS = "min(α12,α21)+π/2"
B_3E = "(D_3e+π)/3"
B_BC = "BC"
B_L1 = "Λ1+π01"
B_L2 = "Λ2+π02"
B_A12 = "α12+π02"
B_A21 = "α21+π01"
B_IC_SPLIT = "IC+π01+π02"
B_3E_SPLIT = "(D_3e+π01+π02)/3"


class Mode(str, enum.Enum):
    HALF = "half"
    FULL = "full"


@dataclass(frozen=True, slots=True)
class CoopBudget:
    """Half: d01 + d02 <= pi. Full: d01 <= pi/2 and d02 <= pi/2."""

    mode: Mode
    pi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        v = to_rational(self.pi)
        if v < 0:
            raise ValueError(f"cooperation budget must be nonnegative, got {v}")
        object.__setattr__(self, "pi", v)

    @classmethod
    def half(cls, pi: RationalLike) -> "CoopBudget":
        return cls(Mode.HALF, to_rational(pi))

    @classmethod
    def full(cls, pi: RationalLike) -> "CoopBudget":
        return cls(Mode.FULL, to_rational(pi))

    def admits(self, d01: Fraction, d02: Fraction) -> bool:
        if self.mode is Mode.HALF:
            return d01 + d02 <= self.pi
        return d01 <= self.pi / 2 and d02 <= self.pi / 2


@dataclass(frozen=True, slots=True)
class SplitBudget:
    pi01: Fraction
    pi02: Fraction

    def __post_init__(self) -> None:
        for name in ("pi01", "pi02"):
            v = to_rational(getattr(self, name))
            if v < 0:
                raise ValueError(f"{name} must be nonnegative, got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True, slots=True)
class Line:
    """The bound offset + slope*pi."""

    bound_id: str
    offset: Fraction
    slope: Fraction

    def at(self, pi: Fraction) -> Fraction:
        return self.offset + self.slope * pi


@dataclass(frozen=True)
class BoundSet:
    entries: tuple[tuple[str, Fraction], ...]
    active: tuple[str, ...] = field(default=())

    @property
    def value(self) -> Fraction:
        return min(v for _, v in self.entries)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.entries)


def bound_lines(p: ChannelParams, mode: Mode | str) -> list[Line]:
    """The regime- and mode-appropriate bounds as lines in pi."""
    mode = Mode(mode)
    regime = classify_regime(p)
    ic, bc = d_ic(p), d_bc(p)
    lines = [Line(B_IC, ic, Fraction(1))]
    if regime is Regime.MIXED and mode is Mode.FULL:
        lines.append(Line(B_IC_HALF, ic, HALF_))
    if regime is Regime.STRONG:
        if mode is Mode.HALF:
            lines.append(Line(B_2E, d_2e(p) / 2, HALF_))
        else:
            lines.append(Line(B_MINCROSS, min(p.a12, p.a21), HALF_))
        lines.append(Line(B_3E, d_3e(p) / 3, THIRD))
    lines.append(Line(B_BC, bc, Fraction(0)))
    return lines


def _evaluate(lines: Iterable[Line], pi: Fraction) -> BoundSet:
    entries = tuple((ln.bound_id, ln.at(pi)) for ln in lines)
    best = min(v for _, v in entries)
    return BoundSet(entries, tuple(i for i, v in entries if v == best))


def sum_gdof(p: ChannelParams, b: CoopBudget) -> tuple[Fraction, BoundSet]:
    bs = _evaluate(bound_lines(p, b.mode), b.pi)
    return bs.value, bs


def lambdas(p: ChannelParams) -> tuple[Fraction, Fraction]:
    lam1 = max(p.a21, p.a22) + pos(p.a11 - p.a21)
    lam2 = max(p.a12, p.a11) + pos(p.a22 - p.a12)
    return lam1, lam2


def converse_bounds(p: ChannelParams, s: SplitBudget) -> BoundSet:
    regime = classify_regime(p)
    pi01, pi02 = s.pi01, s.pi02
    entries = [(B_IC_SPLIT, d_ic(p) + pi01 + pi02)]
    if regime is Regime.MIXED:
        lam1, lam2 = lambdas(p)
        entries += [(B_L1, lam1 + pi01), (B_L2, lam2 + pi02)]
    elif regime is Regime.STRONG:
        entries += [
            (B_A12, p.a12 + pi02),
            (B_A21, p.a21 + pi01),
            (B_3E_SPLIT, (d_3e(p) + pi01 + pi02) / 3),
        ]
    entries.append((B_BC, d_bc(p)))
    best = min(v for _, v in entries)
    return BoundSet(tuple(entries), tuple(i for i, v in entries if v == best))


def general_converse(p: ChannelParams, s: SplitBudget) -> Fraction:
    """Upper bound on the sum-GDoF when d01 <= pi01 and d02 <= pi02."""
    return converse_bounds(p, s).value


@dataclass(frozen=True)
class PiecewiseCurve:
    """Lower envelope of the bound lines on pi >= 0.

    breakpoints[0] is (0, D_IC); slopes[i] holds on [breakpoints[i], breakpoints[i+1])
    and the last slope (always 0) holds from the last breakpoint onward.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]
    active: tuple[str, ...]
    saturation: Fraction

    def __call__(self, pi: RationalLike) -> Fraction:
        pi = to_rational(pi)
        if pi < 0:
            raise ValueError("pi must be nonnegative")
        idx = 0
        for i, (x, _) in enumerate(self.breakpoints):
            if x <= pi:
                idx = i
        x0, y0 = self.breakpoints[idx]
        return y0 + self.slopes[idx] * (pi - x0)

    @property
    def saturation_point(self) -> Fraction:
        return self.breakpoints[-1][0]


def envelope(lines: list[Line]) -> PiecewiseCurve:
    """Exact lower envelope of lines on [0, inf); requires a slope-0 line."""
    if not any(ln.slope == 0 for ln in lines):
        raise ValueError("envelope needs a constant line to terminate")
    start = min(lines, key=lambda ln: (ln.offset, ln.slope))
    x = Fraction(0)
    cur = start
    bps = [(x, cur.offset)]
    slopes = [cur.slope]
    active = [cur.bound_id]
    while cur.slope > 0:
        best: Optional[tuple[Fraction, Fraction, Line]] = None
        for ln in lines:
            if ln.slope >= cur.slope:
                continue
            xi = (ln.offset - cur.offset) / (cur.slope - ln.slope)
            if xi < x:
                xi = x
            key = (xi, ln.slope)
            if best is None or key < best[:2]:
                best = (xi, ln.slope, ln)
        assert best is not None
        x, _, cur = best
        y = cur.at(x)
        if x == bps[-1][0]:
            # several lines meet at the same point; keep the flattest
            bps[-1] = (x, y)
            slopes[-1] = cur.slope
            active[-1] = cur.bound_id
        else:
            bps.append((x, y))
            slopes.append(cur.slope)
            active.append(cur.bound_id)
    return PiecewiseCurve(tuple(bps), tuple(slopes), tuple(active), bps[-1][1])


def curve(p: ChannelParams, mode: Mode | str) -> PiecewiseCurve:
    return envelope(bound_lines(p, mode))


def threshold_oracle(p: ChannelParams, mode: Mode | str) -> Fraction:
    """Smallest pi reaching d_bc, from each line's crossing of the BC level.

    Independent of both the envelope walk and the corollary tables: since the
    value is the min of lines, it reaches BC exactly when every sloped line
    has climbed to BC.
    """
    bc = d_bc(p)
    need = Fraction(0)
    for ln in bound_lines(p, mode):
        if ln.slope > 0:
            need = max(need, (bc - ln.offset) / ln.slope)
    return need


def _strong_normalized(p: ChannelParams) -> ChannelParams:
    return p.swapped() if p.a12 < p.a21 else p


def pi_star(p: ChannelParams) -> Fraction:
    """Least half-duplex budget achieving the broadcast-channel sum-GDoF."""
    if classify_regime(p) is not Regime.STRONG:
        return d_bc(p) - d_ic(p)
    q = _strong_normalized(p)
    big_m = q.a11 + q.a22
    big_n = q.a12 + q.a21
    mx = max(q.a11, q.a22)
    if q.a12 <= big_m and q.a21 <= big_m:
        # the curve switches branch at N = M + max(a11, a22)
        if big_n <= big_m + mx:
            return big_n - 2 * mx
        return 2 * big_n - big_m - 3 * mx
    if q.a12 >= big_m and q.a21 <= big_m:
        return big_n + q.a21 - 3 * mx
    return big_n + big_m - 3 * mx


def pi_plus(p: ChannelParams) -> Fraction:
    """Least full-duplex budget achieving the broadcast-channel sum-GDoF."""
    regime = classify_regime(p)
    if regime is Regime.WEAK:
        return d_bc(p) - d_ic(p)
    if regime is Regime.MIXED:
        return 2 * (d_bc(p) - d_ic(p))
    q = _strong_normalized(p)
    big_m = q.a11 + q.a22
    big_n = q.a12 + q.a21
    mx = max(q.a11, q.a22)
    mn = min(q.a11, q.a22)
    a12, a21 = q.a12, q.a21
    if a12 <= big_m and a21 <= big_m and 2 * a21 >= big_m + mx:
        return 2 * big_n - big_m - 3 * mx
    if a12 >= big_m and a21 <= big_m and a12 <= 2 * a21 - mx:
        return big_n + a21 - 3 * mx
    if a12 >= big_m and a21 >= big_m and a12 <= a21 + mn:
        return big_n + big_m - 3 * mx
    return 2 * a12 - 2 * mx
