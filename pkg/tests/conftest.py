import random

import pytest
from hypothesis import strategies as st

from coverdim.poset import poset_from_cover


@st.composite
def posets(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return poset_from_cover(n, chosen)


def random_order(n, prob, seed):
    rng = random.Random(seed)
    arcs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]
    return poset_from_cover(n, arcs), arcs


@pytest.fixture
def rng():
    return random.Random(12345)
