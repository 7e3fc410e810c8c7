"""Explicit achievable schemes for every parameter point and budget.

Each builder works in a normalized labeling (a11 >= a22 for the weak and
mixed regimes, a12 >= a21 for the strong regime); `synthesize` swaps the
users when needed and swaps the finished scheme back.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .channel import ChannelParams, Regime, classify_regime
from .scheme import Msg, Scheme, SchemeBuilder, swap_scheme
from .theorems import CoopBudget, Mode, pi_plus, pi_star

W11, W22, W01, W02 = Msg.W11, Msg.W22, Msg.W01, Msg.W02
W11p, W11c, W22p, W22c = Msg.W11p, Msg.W11c, Msg.W22p, Msg.W22c
W01p, W02p, W0c = Msg.W01p, Msg.W02p, Msg.W0c
TOP = Fraction(0)
INF = None

Builder = Callable[[ChannelParams, CoopBudget, Fraction], Scheme]


def _mn(q: ChannelParams):
    return q.a11 + q.a22, q.a12 + q.a21, max(q.a11, q.a22), min(q.a11, q.a22)


# ---------------------------------------------------------------- weak

def weak_row1(q, b, x):
    a11, a22, a12, a21 = q.as_tuple()
    return (SchemeBuilder(q, b, "weak/table1/row1")
            .cw(W11, a11 - a21, (1, a21, INF))
            .cw(W22, a22 - a12, (2, a12, INF))
            .cw(W0c, x, (1, TOP, a21), (2, TOP, a12))
            .rx(1, W0c, W11)
            .rx(2, W0c, W22)
            .build())


def weak_row2(q, b, x):
    a11, a22, a12, a21 = q.as_tuple()
    if a12 >= a21:
        tag, c, d22, lvl = "weak/table1/row2a", a12 + a21 - a22, a22 - a12, a12
    else:
        tag, c, d22, lvl = "weak/table1/row2b", 2 * a21 - a22, a22 - a21, a21
    return (SchemeBuilder(q, b, tag)
            .cw(W11p, a11 - a21, (1, a21, INF))
            .cw(W11c, c, (1, TOP, c))
            .cw(W22, d22, (2, lvl, INF))
            .cw(W0c, x, (1, c, a21), (2, TOP, lvl))
            .rx(1, W11c, W0c, W11p)
            .rx(2, W0c, W11c, W22)
            .build())


def weak_row3(q, b, x):
    a11, a22, a12, a21 = q.as_tuple()
    big_n = a12 + a21
    c1, c2 = big_n - a22, big_n - a11
    return (SchemeBuilder(q, b, "weak/table1/row3")
            .cw(W11c, c1, (1, TOP, c1))
            .cw(W11p, a11 - a21, (1, a21, INF))
            .cw(W22c, c2, (2, TOP, c2))
            .cw(W22p, a22 - a12, (2, a12, INF))
            .cw(W0c, x, (1, c1, a21), (2, c2, a12))
            .rx(1, W11c, W0c, W22c, W11p)
            .rx(2, W22c, W0c, W11c, W22p)
            .build())


def weak_no_gain(q, b, x):
    """Both direct links below N and no room for cooperation: a plain
    common/private split whose commons are decoded jointly at both receivers."""
    a11, a22, a12, a21 = q.as_tuple()
    m = min(a12, a21)
    y = min(a12 + a21 - a11, m)
    return (SchemeBuilder(q, b, "weak/no-gain")
            .cw(W11p, a11 - a21, (1, a21, INF))
            .cw(W22p, a22 - a12, (2, a12, INF))
            .cw(W11c, m - y, (1, TOP, a21))
            .cw(W22c, y, (2, TOP, a12))
            .rx(1, (W11c, W22c), W11p)
            .rx(2, (W22c, W11c), W22p)
            .build())


def weak_case(q: ChannelParams) -> Builder:
    a11, a22, a12, a21 = q.as_tuple()
    big_n = a12 + a21
    if a22 >= big_n:
        return weak_row1
    if a11 >= big_n:
        return weak_row2
    if big_n + max(a12, a21) <= a11 + a22:
        return weak_row3
    return weak_no_gain


# ---------------------------------------------------------------- mixed

def mixed_row1(q, b, x):
    a11, a22, a12, a21 = q.as_tuple()
    return (SchemeBuilder(q, b, "mixed/table2/row1")
            .cw(W11, a11 - a21, (1, a21, INF))
            .cw(W22, min(a22, a12 + a21 - a11), (2, TOP, a22))
            .cw(W01, x, (2, a22, INF))
            .rx(1, W22, W01, W11)
            .rx(2, W22)
            .build())


def mixed_row2(q, b, x):
    a11, a22, a12, a21 = q.as_tuple()
    return (SchemeBuilder(q, b, "mixed/table2/row2")
            .cw(W11, min(a11, a12 + a21 - a22), (1, TOP, a11))
            .cw(W22, a22 - a12, (2, a12, INF))
            .cw(W02, x, (1, a11, INF))
            .rx(1, W11)
            .rx(2, W11, W02, W22)
            .build())


def mixed_row3(q, b, x):
    a11 = q.a11
    return (SchemeBuilder(q, b, "mixed/table2/row3")
            .cw(W11, a11, (1, TOP, a11))
            .cw(W02, x, (1, a11, INF))
            .rx(1, W11)
            .rx(2, W11, W02)
            .build())


def mixed_row4(q, b, x):
    return (SchemeBuilder(q, b, "mixed/table2/row4")
            .cw(W11, q.a11, (1, TOP, INF))
            .cw(W01, x, (2, TOP, INF))
            .rx(1, W01, W11)
            .build())


def mixed_no_gain(q, b, x):
    """Cross links on the same side of both direct links: user 1 alone
    reaches a11, which is both the IC and the BC value here."""
    return (SchemeBuilder(q, b, "mixed/no-gain")
            .cw(W11, q.a11, (1, TOP, INF))
            .rx(1, W11)
            .build())


def mixed_case(q: ChannelParams) -> Builder:
    a11, a22, a12, a21 = q.as_tuple()
    if a21 <= a22 and a12 >= a11:
        return mixed_row1
    if a12 <= a22 and a21 >= a11:
        return mixed_row2
    if a22 <= a12 <= a11 <= a21:
        return mixed_row3
    if a22 <= a21 <= a11 <= a12:
        return mixed_row4
    return mixed_no_gain


# ---------------------------------------------------------------- strong, half-duplex shapes

def case1_first(q, b, x, tag="strong/case1/first-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    return (SchemeBuilder(q, b, tag)
            .cw(W11, a21 - a22, (1, TOP, INF))
            .cw(W22, a22, (2, TOP, a21))
            .cw(W01p, x, (2, a21, INF))
            .rx(1, (W11, W22), W01p)
            .rx(2, W11, W22)
            .build())


def case1_second(q, b, x, tag="strong/case1/second-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    d11 = (a21 + 2 * a11 - a12 - x) / 2
    d22 = a12 - a11
    s = d11 + d22
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, s))
            .cw(W22, d22, (2, TOP, s))
            .cw(W01p, (a12 - a21 + x) / 2, (2, s, INF))
            .cw(W02p, (a21 - a12 + x) / 2, (1, s, INF))
            .rx(1, W22, W11, W01p)
            .rx(2, (W11, W22), W02p)
            .build())


def case2_third(q, b, x, tag="strong/case2/third-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    big_m, big_n, _, _ = _mn(q)
    d11 = (2 * a21 - a12 + 2 * a11 - a22 - x) / 3
    d22 = (2 * a12 - a21 + 2 * a22 - a11 - x) / 3
    d01p = (big_m + a12 - 2 * a21 + x) / 3
    d02p = (big_m + a21 - 2 * a12 + x) / 3
    d0c = (big_n - 2 * big_m + x) / 3
    s = (2 * big_n - big_m - x) / 3
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, s), (2, d22, s))
            .cw(W01p, d01p, (2, s, INF))
            .cw(W02p, d02p, (1, s, INF))
            .rx(1, W22, W0c, W11, W01p)
            .rx(2, W11, W0c, W22, W02p)
            .build(_fd_share(b, d01p, d0c)))


def case3_first(q, b, x, tag="strong/case3/first-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    return (SchemeBuilder(q, b, tag)
            .cw(W11, a21 - a22, (1, TOP, INF))
            .cw(W22, a22, (2, TOP, a22))
            .cw(W01p, x, (2, a22, INF))
            .rx(1, W22, (W11, W01p))
            .rx(2, W11, W22)
            .build())


def case3_second(q, b, x, tag="strong/case3/second-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    d11 = (2 * a21 + a12 - 3 * a22 - x) / 3
    d22 = (3 * a22 + a12 - a21 - x) / 3
    d01p = (2 * a12 - 2 * a21 + x) / 3
    d02p = (a21 - a12 + x) / 3
    d0c = (a21 - a12 + x) / 3
    s = (2 * a21 + a12 - x) / 3
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, s), (2, d22, a22))
            .cw(W01p, d01p, (2, a22, INF))
            .cw(W02p, d02p, (1, s, INF))
            .rx(1, W22, W0c, (W11, W01p))
            .rx(2, W11, W0c, W22, W02p)
            .build(_fd_share(b, d01p, d0c)))


def case4_first_a(q, b, x, tag="strong/case4/first-bound-a"):
    a11, a22 = q.a11, q.a22
    return (SchemeBuilder(q, b, tag)
            .cw(W11, a11, (1, TOP, a11))
            .cw(W22, a22, (2, TOP, INF))
            .cw(W02p, x, (1, a11, INF))
            .rx(1, W22, W11)
            .rx(2, W11, W02p, W22)
            .build())


def case4_first_b(q, b, x, tag="strong/case4/first-bound-b"):
    a11, a22, a12, a21 = q.as_tuple()
    big_m = a11 + a22
    return (SchemeBuilder(q, b, tag)
            .cw(W11, a11, (1, TOP, a11))
            .cw(W22, a22, (2, TOP, a22))
            .cw(W01p, x + big_m - a21, (2, a22, INF))
            .cw(W02p, a21 - big_m, (1, a11, INF))
            .rx(1, W22, W01p, W11)
            .rx(2, W11, W02p, W22)
            .build())


def case4_second(q, b, x, tag="strong/case4/second-bound"):
    a11, a22, a12, a21 = q.as_tuple()
    big_m, big_n, _, _ = _mn(q)
    d11 = (big_n - 2 * a22 + a11 - x) / 3
    d22 = (big_n - 2 * a11 + a22 - x) / 3
    d01p = (2 * a12 + x - big_m - a21) / 3
    d02p = (2 * a21 + x - big_m - a12) / 3
    d0c = (2 * big_m + x - big_n) / 3
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, a11), (2, d22, a22))
            .cw(W01p, d01p, (2, a22, INF))
            .cw(W02p, d02p, (1, a11, INF))
            .rx(1, W22, W0c, (W11, W01p))
            .rx(2, W11, W0c, (W22, W02p))
            .build(_fd_share(b, d01p, d0c)))


# ---------------------------------------------------------------- strong, full-duplex shapes (x = pi/2)

def _fd_share(b: CoopBudget, d01p: Fraction, d0c: Fraction):
    """W0c attribution. Half-duplex only constrains the total, so all of W0c
    goes to user 1; full-duplex gives user 1 what its direction has left."""
    if b.mode is Mode.HALF:
        return d0c
    return min(max(b.pi / 2 - d01p, Fraction(0)), d0c)


def fd_case1_second(q, b, h, tag="strong/case1/fd-second"):
    a11, a22, a12, a21 = q.as_tuple()
    d11 = a11 - h
    d22 = a12 - a11
    s = d11 + d22
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, s))
            .cw(W22, d22, (2, TOP, s))
            .cw(W01p, h, (2, s, INF))
            .cw(W02p, h + a21 - a12, (1, s, INF))
            .rx(1, W22, W11, W01p)
            .rx(2, (W11, W22), W02p)
            .build())


def fd_case2_common(q, b, h, tag="strong/case2/fd-common"):
    a11, a22, a12, a21 = q.as_tuple()
    big_m = a11 + a22
    d11 = a11 - h
    d22 = a12 - a21 + a22 - h
    d01p = h
    d0c = a21 - big_m + h
    lvl1 = a21 - a22 + d22  # top of W02p at Tx1
    lvl2 = a12 - a11 + d11  # top of W01p at Tx2
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, lvl1), (2, d22, lvl2))
            .cw(W01p, d01p, (2, lvl2, INF))
            .cw(W02p, a21 - a12 + h, (1, lvl1, INF))
            .rx(1, W22, W0c, W11, W01p)
            .rx(2, W11, W0c, W22, W02p)
            .build(_fd_share(b, d01p, d0c)))


def fd_case3_common(q, b, h, tag="strong/case3/fd-common"):
    a11, a22, a12, a21 = q.as_tuple()
    d11 = a12 - a22 - h
    d22 = a22 + a12 - a21 - h
    d0c = a21 - a12 + h
    s = a12 - h
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, s), (2, d22, a22))
            .cw(W01p, h, (2, a22, INF))
            .cw(W02p, a21 - a12 + h, (1, s, INF))
            .rx(1, W22, W0c, (W11, W01p))
            .rx(2, W11, W0c, W22, W02p)
            .build(_fd_share(b, h, d0c)))


def fd_case4_row12(q, b, h, tag="strong/case4/fd-row1"):
    a11, a22, a12, a21 = q.as_tuple()
    d02p = min(h, a21 - a11 - a22)
    return (SchemeBuilder(q, b, tag)
            .cw(W11, a11, (1, TOP, a11))
            .cw(W22, a22, (2, TOP, a22))
            .cw(W01p, h, (2, a22, INF))
            .cw(W02p, d02p, (1, a11, INF))
            .rx(1, W22, W01p, W11)
            .rx(2, W11, W02p, W22)
            .build())


def fd_case4_row3(q, b, h, tag="strong/case4/fd-row3"):
    a11, a22, a12, a21 = q.as_tuple()
    big_m = a11 + a22
    d11 = a12 - a22 - h
    d22 = a12 - a11 - h
    d0c = big_m - a12 + h
    return (SchemeBuilder(q, b, tag)
            .cw(W11, d11, (1, TOP, d11))
            .cw(W22, d22, (2, TOP, d22))
            .cw(W0c, d0c, (1, d11, a11), (2, d22, a22))
            .cw(W01p, h, (2, a22, INF))
            .cw(W02p, a21 - a12 + h, (1, a11, INF))
            .rx(1, W22, W0c, (W11, W01p))
            .rx(2, W11, W0c, (W22, W02p))
            .build(_fd_share(b, h, d0c)))


# ---------------------------------------------------------------- dispatch

def strong_case_number(q: ChannelParams) -> int:
    big_m, big_n, mx, _ = _mn(q)
    if q.a12 <= big_m and q.a21 <= big_m:
        return 1 if big_n <= big_m + mx else 2
    if q.a21 <= big_m:
        return 3
    return 4


def _strong_half(q: ChannelParams, b: CoopBudget, x: Fraction) -> Scheme:
    a11, a22, a12, a21 = q.as_tuple()
    big_m, big_n, _, _ = _mn(q)
    case = strong_case_number(q)
    if case == 1:
        if x <= a12 - a21:
            return case1_first(q, b, x)
        return case1_second(q, b, x)
    if case == 2:
        if x <= a12 - a21:
            return case1_first(q, b, x, "strong/case2/first-bound")
        if x <= 2 * big_m - big_n:
            return case1_second(q, b, x, "strong/case2/second-bound")
        return case2_third(q, b, x)
    if case == 3:
        if x <= a12 - a21:
            return case3_first(q, b, x)
        return case3_second(q, b, x)
    if x <= a21 - big_m:
        return case4_first_a(q, b, x)
    if x <= big_n - 2 * big_m:
        return case4_first_b(q, b, x)
    return case4_second(q, b, x)


def _strong_full(q: ChannelParams, b: CoopBudget, pi: Fraction) -> Scheme:
    a11, a22, a12, a21 = q.as_tuple()
    big_m, big_n, mx, mn = _mn(q)
    h = pi / 2
    case = strong_case_number(q)
    if case in (1, 2):
        tag = f"strong/case{case}"
        if case == 2 and 2 * a21 > big_m + mx and h > big_m + a12 - 2 * a21:
            return case2_third(q, b, pi, f"{tag}/fd-third-bound")
        if h <= a12 - a21:
            return case1_first(q, b, h, f"{tag}/fd-first-bound")
        if case == 1 or h <= big_m - a21:
            return fd_case1_second(q, b, h, f"{tag}/fd-second")
        return fd_case2_common(q, b, h, f"{tag}/fd-common")
    if case == 3:
        if a12 < 2 * a21 - mx and h > 2 * a12 - 2 * a21:
            return case3_second(q, b, pi, "strong/case3/fd-second-bound")
        if h <= a12 - a21:
            return case3_first(q, b, h, "strong/case3/fd-first-bound")
        return fd_case3_common(q, b, h)
    if a12 < a21 + mn and h > 2 * a12 - a21 - big_m:
        return case4_second(q, b, pi, "strong/case4/fd-second-bound")
    if h <= a21 - big_m:
        return fd_case4_row12(q, b, h, "strong/case4/fd-row1")
    if h <= a12 - big_m:
        return fd_case4_row12(q, b, h, "strong/case4/fd-row2")
    return fd_case4_row3(q, b, h)


def _effective_pi(p: ChannelParams, b: CoopBudget) -> Fraction:
    """Budget beyond the saturation threshold buys nothing; build at the threshold."""
    cap = pi_star(p) if b.mode is Mode.HALF else pi_plus(p)
    return min(b.pi, cap)


def _normalize(p: ChannelParams) -> tuple[ChannelParams, bool]:
    if classify_regime(p) is Regime.STRONG:
        swap = p.a12 < p.a21
    else:
        swap = p.a11 < p.a22
    return (p.swapped() if swap else p), swap


def _build(q: ChannelParams, b: CoopBudget, pi: Fraction) -> Scheme:
    regime = classify_regime(q)
    if regime is Regime.WEAK:
        return weak_case(q)(q, b, pi)
    if regime is Regime.MIXED:
        x = pi if b.mode is Mode.HALF else pi / 2
        return mixed_case(q)(q, b, x)
    if b.mode is Mode.HALF:
        return _strong_half(q, b, pi)
    return _strong_full(q, b, pi)


def synthesize(p: ChannelParams, b: CoopBudget) -> Scheme:
    """The achievable scheme for (p, b); its claimed sum equals sum_gdof(p, b)."""
    pi = _effective_pi(p, b)
    q, swap = _normalize(p)
    s = _build(q, b, pi)
    return swap_scheme(s, p) if swap else s


def case_id(p: ChannelParams, b: CoopBudget) -> str:
    return synthesize(p, b).case_id
