from fractions import Fraction

import pytest

from coopgdof.channel import ChannelParams

F = Fraction


@pytest.fixture
def worked():
    """The strong-interference example point used throughout."""
    return ChannelParams(2, 2, 5, 3)


@pytest.fixture
def slopes_point():
    """A strong point whose half-duplex curve shows every slope."""
    return ChannelParams(F(6, 5), 1, 2, F(9, 5))
