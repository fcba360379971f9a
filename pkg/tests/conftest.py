import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from turan_matroids.geometry import matroid_from_vectors

settings.register_profile(
    "toolkit",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("toolkit")


@st.composite
def linear_matroids(draw, min_n=2, max_n=7, max_dim=4):
    """Random representable matroid from a random small matrix over GF(2)/GF(3)."""
    q = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(min_n, max_n))
    dim = draw(st.integers(1, min(max_dim, n)))
    cols = draw(
        st.lists(
            st.lists(st.integers(0, q - 1), min_size=dim, max_size=dim).map(tuple),
            min_size=n,
            max_size=n,
        ).filter(lambda cs: any(any(c) for c in cs))
    )
    return matroid_from_vectors(cols, q)


@pytest.fixture
def rng():
    return random.Random(987654321)


def random_linear(rng, min_n=2, max_n=7):
    while True:
        q = rng.choice((2, 3))
        n = rng.randint(min_n, max_n)
        dim = rng.randint(1, min(4, n))
        cols = [tuple(rng.randrange(q) for _ in range(dim)) for _ in range(n)]
        if any(any(c) for c in cols):
            M = matroid_from_vectors(cols, q)
            if M.r >= 1:
                return M
