from itertools import combinations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hyperlag import Hypergraph

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, rank=3, min_n=3, max_n=7, min_edges=0):
    r = draw(st.sampled_from(rank)) if isinstance(rank, (list, tuple)) else rank
    n = draw(st.integers(max(min_n, r), max_n))
    pool = list(combinations(range(1, n + 1), r))
    picks = draw(st.lists(st.sampled_from(pool), min_size=min(min_edges, len(pool)), max_size=len(pool), unique=True))
    return Hypergraph(r, n, tuple(picks))


@st.composite
def simplex_points(draw, n, exact=False):
    from fractions import Fraction

    raw = draw(st.lists(st.integers(0, 40), min_size=n, max_size=n).filter(lambda v: sum(v) > 0))
    total = sum(raw)
    return [Fraction(v, total) for v in raw] if exact else [v / total for v in raw]


def random_graph(rng, r, n, p):
    return Hypergraph(r, n, tuple(e for e in combinations(range(1, n + 1), r) if rng.random() < p))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
