"""Channel parameters, regime classification and the closed-form IC/BC bounds.

All exponents are exact rationals. The nominal power P never appears as a
value; every quantity here is a GDoF exponent.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

RationalLike = Union[int, str, Fraction]

INF = None  # open-ended band bottom (power goes all the way down)


def to_rational(x: RationalLike | float) -> Fraction:
    """Exact conversion. Floats are routed through their decimal repr so that
    0.1 becomes 1/10 rather than the binary approximation."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def pos(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


class Regime(str, enum.Enum):
    WEAK = "Weak"
    MIXED = "Mixed"
    STRONG = "Strong"


@dataclass(frozen=True, slots=True)
class ChannelParams:
    """Link exponents; a_ki is the strength of Transmitter i -> Receiver k."""

    a11: Fraction
    a22: Fraction
    a12: Fraction
    a21: Fraction

    def __post_init__(self) -> None:
        for name in ("a11", "a22", "a12", "a21"):
            v = to_rational(getattr(self, name))
            if v < 0:
                raise ValueError(f"{name} must be nonnegative, got {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, a11, a22, a12, a21) -> "ChannelParams":
        return cls(a11, a22, a12, a21)

    def link(self, rx: int, tx: int) -> Fraction:
        return getattr(self, f"a{rx}{tx}")

    def swapped(self) -> "ChannelParams":
        """Relabel users 1 <-> 2."""
        return ChannelParams(self.a22, self.a11, self.a21, self.a12)

    def scaled(self, gamma: RationalLike) -> "ChannelParams":
        g = to_rational(gamma)
        return ChannelParams(g * self.a11, g * self.a22, g * self.a12, g * self.a21)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a11, self.a22, self.a12, self.a21)


def is_weak(p: ChannelParams) -> bool:
    return max(p.a12, p.a21) <= min(p.a11, p.a22)


def is_strong(p: ChannelParams) -> bool:
    return max(p.a11, p.a22) <= min(p.a12, p.a21)


def classify_regime(p: ChannelParams) -> Regime:
    """Weak is checked first, then Strong; Mixed only when neither holds.

    At points on a boundary the bound formulas of adjacent regimes coincide,
    so the tie-break has no effect on any value.
    """
    if is_weak(p):
        return Regime.WEAK
    if is_strong(p):
        return Regime.STRONG
    return Regime.MIXED


def admissible_regimes(p: ChannelParams) -> list[Regime]:
    """Every tag whose closed region contains p."""
    out = []
    if is_weak(p):
        out.append(Regime.WEAK)
    if is_strong(p):
        out.append(Regime.STRONG)
    strictly_weak = max(p.a12, p.a21) < min(p.a11, p.a22)
    strictly_strong = max(p.a11, p.a22) < min(p.a12, p.a21)
    if not strictly_weak and not strictly_strong:
        out.append(Regime.MIXED)
    return out


def d_ic(p: ChannelParams) -> Fraction:
    """Sum-GDoF of the interference channel without cooperation."""
    a11, a22, a12, a21 = p.as_tuple()
    return min(
        max(a11 - a21, a12) + max(a22 - a12, a21),
        max(a11, a12) + pos(a22 - a12),
        max(a21, a22) + pos(a11 - a21),
        a11 + a22,
    )


def d_bc(p: ChannelParams) -> Fraction:
    """Sum-GDoF with full transmitter cooperation (two-user MISO BC)."""
    a11, a22, a12, a21 = p.as_tuple()
    return min(
        max(a11, a12) + pos(max(a21 - a11, a22 - a12)),
        max(a21, a22) + pos(max(a11 - a21, a12 - a22)),
    )


def d_2e(p: ChannelParams) -> Fraction:
    return p.a12 + p.a21


def d_3e(p: ChannelParams) -> Fraction:
    """Three-user-sum bound term; evaluated in the a12 >= a21 labeling."""
    if p.a12 < p.a21:
        p = p.swapped()
    a11, a22, a12, a21 = p.as_tuple()
    return min(a21 - a22, a11) + 2 * max(a21 - a11, a22) + a12 + max(a12 - a22, a11)


@dataclass(frozen=True, slots=True)
class LevelBand:
    """Transmit-power exponent interval [hi, lo].

    hi is the distance of the band top below full power, lo the distance of
    its bottom; lo=None means the band extends down indefinitely. A band
    with hi == lo is empty.
    """

    hi: Fraction
    lo: Optional[Fraction] = INF

    def __post_init__(self) -> None:
        hi = to_rational(self.hi)
        object.__setattr__(self, "hi", hi)
        if self.lo is not None:
            lo = to_rational(self.lo)
            object.__setattr__(self, "lo", lo)
            if lo < hi:
                raise ValueError(f"band top {hi} lies below its bottom {lo}")
        if hi < 0:
            raise ValueError(f"band top must be >= 0, got {hi}")

    @property
    def empty(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def width(self) -> Optional[Fraction]:
        return None if self.lo is None else self.lo - self.hi

    def overlaps(self, other: "LevelBand") -> bool:
        """Open-interval overlap; touching endpoints do not count."""
        if self.empty or other.empty:
            return False
        a_lo = self.lo
        b_lo = other.lo
        below_a = a_lo is None or other.hi < a_lo
        below_b = b_lo is None or self.hi < b_lo
        return below_a and below_b

    def clipped(self, depth: Fraction) -> tuple[Fraction, Fraction]:
        """Band restricted to [0, depth]; returns (top, bottom) with top <= bottom."""
        top = min(self.hi, depth)
        bot = depth if self.lo is None else min(self.lo, depth)
        return top, bot

    def __str__(self) -> str:
        lo = "inf" if self.lo is None else str(self.lo)
        return f"[{self.hi},{lo}]"


def band_top(b: LevelBand, at_receiver_exponent: RationalLike) -> Optional[Fraction]:
    """Received exponent of the band top over a link of the given strength.

    Returns None for an empty band (it delivers nothing at any receiver).
    The result may be negative; callers clip at the noise floor.
    """
    if b.empty:
        return None
    return to_rational(at_receiver_exponent) - b.hi
