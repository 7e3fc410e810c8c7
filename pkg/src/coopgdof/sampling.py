"""Random rational parameter points for sweeps and property tests."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .channel import ChannelParams, Regime, classify_regime
from .theorems import CoopBudget, Mode, pi_plus, pi_star


def rational(rng: random.Random, max_den: int = 12, top: int = 3) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(0, top * d), d)


def sample_params(rng: random.Random, regime: Optional[Regime] = None,
                  max_den: int = 12, top: int = 3) -> ChannelParams:
    """Exponents with denominators <= max_den, optionally forced into a regime.

    Weak and Strong points are built by assigning the two larger draws to the
    direct or the cross links; Mixed points are drawn until one lands there.
    """
    while True:
        xs = sorted(rational(rng, max_den, top) for _ in range(4))
        if regime is Regime.WEAK:
            lo, hi = xs[:2], xs[2:]
        elif regime is Regime.STRONG:
            hi, lo = xs[:2], xs[2:]
        else:
            rng.shuffle(xs)
            p = ChannelParams(*xs)
            if regime is None or classify_regime(p) is regime:
                return p
            continue
        rng.shuffle(lo)
        rng.shuffle(hi)
        p = ChannelParams(hi[0], hi[1], lo[0], lo[1])
        if classify_regime(p) is regime:
            return p


def sample_budgets(rng: random.Random, p: ChannelParams, mode: Mode, k: int = 5) -> list[CoopBudget]:
    """Zero, a random interior point, the saturation threshold, one past it, and a random value."""
    cap = pi_star(p) if mode is Mode.HALF else pi_plus(p)
    pis = [Fraction(0), cap * Fraction(rng.randint(1, 11), 12), cap, cap + 1,
           Fraction(rng.randint(0, 48), 12)]
    return [CoopBudget(mode, x) for x in pis[:k]]
