"""Carry-free deterministic channel simulator.

With grain g every exponent a becomes g*a signal levels. Transmitter i
sends a vector of digits indexed by depth t (t = 0 is full power); receiver
k sees depth t of transmitter i at height n_ki - 1 - t, and heights below 0
are lost in the noise. Channel gains are 1 and digits add without carries.

Digits live in the prime field GF(P). Each codeword placement maps the
codeword's g*gdof information digits onto the levels of its band through a
seeded random matrix, which is how a Gaussian codebook spreads information
over its power band. Receivers follow their decoding plans exactly: a step is
solved by Gaussian elimination with every not-yet-decoded codeword treated
as unknown interference, so a step succeeds only if the wanted digits are
uniquely determined. This covers successive steps and joint MAC steps alike.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .channel import ChannelParams
from .scheme import Msg, Scheme
from .verify import required_at, verify

FIELD = 2_147_483_647  # 2^31 - 1; products of two residues fit in int64


class GridError(ValueError):
    """An exponent, band edge or gdof is not a multiple of 1/g."""


class NotVerifiedError(ValueError):
    """The scheme was rejected by the GDoF-level checker."""


def _levels(x: Fraction, g: int, what: str) -> int:
    v = x * g
    if v.denominator != 1:
        raise GridError(f"{what} = {x} is not on the 1/{g} grid")
    return int(v)


def grain_for(s: Scheme, extra: Iterable[Fraction] = ()) -> int:
    """Smallest grain that puts every exponent of the scheme on the grid."""
    dens = [x.denominator for x in s.params.as_tuple()]
    for c in s.codewords:
        dens.append(c.gdof.denominator)
        for pl in c.placements:
            dens.append(pl.band.hi.denominator)
            if pl.band.lo is not None:
                dens.append(pl.band.lo.denominator)
    dens += [Fraction(x).denominator for x in extra]
    return math.lcm(*dens) if dens else 1


@dataclass(frozen=True)
class GrainedChannel:
    params: ChannelParams
    grain: int

    def __post_init__(self) -> None:
        if self.grain < 1:
            raise GridError("grain must be a positive integer")
        for k in (1, 2):
            for i in (1, 2):
                _levels(self.params.link(k, i), self.grain, f"a{k}{i}")

    def n(self, rx: int, tx: int) -> int:
        return int(self.params.link(rx, tx) * self.grain)

    def tx_length(self, tx: int) -> int:
        return max(self.n(1, tx), self.n(2, tx))

    def rx_height(self, rx: int) -> int:
        return max(self.n(rx, 1), self.n(rx, 2))


@dataclass
class SimResult:
    grain: int
    delivered: dict[tuple[int, Msg], int]
    expected: dict[tuple[int, Msg], int]
    collisions: list[tuple[int, Msg, Msg, int]] = field(default_factory=list)
    failed_steps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.collisions and all(
            self.delivered.get(key, 0) == want for key, want in self.expected.items()
        )

    def per_message(self) -> dict[Msg, int]:
        """Digits delivered at each message's intended receiver(s), minimum over them."""
        out: dict[Msg, int] = {}
        for (rx, m), v in self.delivered.items():
            if m is Msg.W0c or m.owner == rx:
                out[m] = min(out.get(m, v), v)
        return out


def _rref_solve(mat: np.ndarray, n_nuis: int, n_want: int):
    """Row-reduce [nuisance | wanted | rhs] over GF(FIELD).

    Returns (number of wanted columns that became pivots, solution vector for
    the wanted columns or None if they are not all pivots).
    """
    m = mat % FIELD
    rows, cols = m.shape
    ncols = n_nuis + n_want
    r = 0
    pivots: list[tuple[int, int]] = []
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), FIELD - 2, FIELD)
        m[r] = (m[r] * inv) % FIELD
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - (col[hit, None] * m[r][None, :]) % FIELD) % FIELD
        pivots.append((r, c))
        r += 1
    wanted = [(row, c) for row, c in pivots if c >= n_nuis]
    if len(wanted) < n_want:
        return len(wanted), None
    sol = np.zeros(n_want, dtype=np.int64)
    for row, c in wanted:
        sol[c - n_nuis] = m[row, ncols]
    return len(wanted), sol


def simulate(s: Scheme, p: Optional[ChannelParams] = None, g: Optional[int] = None,
             *, seed: int = 0, check: bool = True) -> SimResult:
    """Run the scheme on the grained deterministic channel.

    check=True refuses schemes that the GDoF checker rejects; pass False to
    watch a broken scheme fail at the digit level.
    """
    p = p if p is not None else s.params
    if check and not verify(s, p).ok:
        raise NotVerifiedError(f"scheme {s.case_id or '<unnamed>'} does not verify")
    g = g if g is not None else grain_for(s)
    ch = GrainedChannel(p, g)
    rng = np.random.default_rng(seed)

    live = [c for c in s.codewords if c.gdof > 0]
    width = {c.msg: _levels(c.gdof, g, f"gdof of {c.msg.value}") for c in live}
    info = {c.msg: rng.integers(0, FIELD, size=width[c.msg], dtype=np.int64) for c in live}

    # per transmitter: depth -> list of (msg, generator row)
    occupancy: dict[int, dict[int, list[Msg]]] = {1: {}, 2: {}}
    gens: dict[tuple[Msg, int], tuple[int, np.ndarray]] = {}
    for c in live:
        for pl in c.placements:
            length = ch.tx_length(pl.tx)
            top = _levels(pl.band.hi, g, f"band top of {c.msg.value}")
            bot = length if pl.band.lo is None else _levels(pl.band.lo, g, f"band bottom of {c.msg.value}")
            top, bot = min(top, length), min(bot, length)
            if bot <= top:
                continue
            gens[(c.msg, pl.tx)] = (top, rng.integers(0, FIELD, size=(bot - top, width[c.msg]), dtype=np.int64))
            for t in range(top, bot):
                occupancy[pl.tx].setdefault(t, []).append(c.msg)

    collisions = []
    for tx in (1, 2):
        for t in sorted(occupancy[tx]):
            ms = occupancy[tx][t]
            for i in range(1, len(ms)):
                collisions.append((tx, ms[0], ms[i], t))

    def received_matrix(rx: int, m: Msg) -> np.ndarray:
        """Map from the codeword's digits to receiver heights (row 0 = top)."""
        height = ch.rx_height(rx)
        a = np.zeros((height, width[m]), dtype=np.int64)
        for tx in (1, 2):
            if (m, tx) not in gens:
                continue
            top, gm = gens[(m, tx)]
            n = ch.n(rx, tx)
            for j in range(gm.shape[0]):
                t = top + j
                if t >= n:
                    break
                row = height - n + t  # height index h = n-1-t counted from the top
                a[row] = (a[row] + gm[j]) % FIELD
        return a

    expected: dict[tuple[int, Msg], int] = {}
    delivered: dict[tuple[int, Msg], int] = {}
    failed: list[tuple[int, int]] = []
    for rx in (1, 2):
        mats = {c.msg: received_matrix(rx, c.msg) for c in live}
        y = np.zeros(ch.rx_height(rx), dtype=np.int64)
        for c in live:
            y = (y + (mats[c.msg] * info[c.msg][None, :] % FIELD).sum(axis=1)) % FIELD
        for c in live:
            if required_at(rx, c.msg):
                expected[(rx, c.msg)] = width[c.msg]
        undecoded = [c.msg for c in live]
        for i, st in enumerate(s.plan(rx).steps):
            want = [m for m in st.msgs if m in width]
            if not want:
                continue
            nuis = [m for m in undecoded if m not in want]
            blocks = [mats[m] for m in nuis] + [mats[m] for m in want] + [y[:, None]]
            mat = np.concatenate(blocks, axis=1)
            n_nuis = sum(width[m] for m in nuis)
            n_want = sum(width[m] for m in want)
            got, sol = _rref_solve(mat, n_nuis, n_want)
            if sol is None:
                failed.append((rx, i))
                share = got  # attribute what was resolved proportionally is meaningless; report total
                for m in want:
                    delivered[(rx, m)] = min(width[m], share)
                    share = max(0, share - width[m])
                continue
            off = 0
            for m in want:
                est = sol[off:off + width[m]]
                off += width[m]
                delivered[(rx, m)] = int(np.count_nonzero(est == info[m]))
                # subtract the reconstructed codeword, as a real receiver would
                y = (y - (mats[m] * est[None, :] % FIELD).sum(axis=1)) % FIELD
                undecoded.remove(m)
    return SimResult(g, delivered, expected, collisions, failed)
