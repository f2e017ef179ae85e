from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hyperk.hypnum import Hyp
from hyperk.interval import HypInterval

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

# Dyadic rationals are exact in binary floating point, so sums and
# differences of a few of them never round.
dyadics = st.integers(-(2**20), 2**20).map(lambda n: n / 2**10)
hyps = st.builds(Hyp, dyadics, dyadics)
# few enough bits that a product of three is still exact
small_dyadics = st.integers(-(2**8), 2**8).map(lambda n: n / 2**4)
small_hyps = st.builds(Hyp, small_dyadics, small_dyadics)


@st.composite
def intervals(draw, allow_degenerate=True):
    a1, b1 = sorted((draw(dyadics), draw(dyadics)))
    a2, b2 = sorted((draw(dyadics), draw(dyadics)))
    if not allow_degenerate:
        b1 += 1
        b2 += 1
    return HypInterval(Hyp(a1, a2), Hyp(b1, b2))


THIRD = Fraction(1, 3)


@pytest.fixture
def unit():
    return HypInterval(Hyp(0, 0), Hyp(1, 1))
