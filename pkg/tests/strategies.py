from fractions import Fraction

from hypothesis import strategies as st

from coopgdof.channel import ChannelParams

rationals = st.builds(
    lambda n, d: Fraction(n, d),
    st.integers(min_value=0, max_value=36),
    st.integers(min_value=1, max_value=12),
)
params = st.builds(ChannelParams, rationals, rationals, rationals, rationals)
budgets = st.builds(lambda n, d: Fraction(n, d), st.integers(0, 60), st.integers(1, 12))
gammas = st.builds(lambda n, d: Fraction(n, d), st.integers(1, 30), st.integers(1, 12))
