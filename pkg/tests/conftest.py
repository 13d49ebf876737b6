import numpy as np
import pytest

from ctq.states import MultipartiteState, PureState


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def haar_pure(dims, rng):
    n = int(np.prod(dims))
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    a /= np.linalg.norm(a)
    cls = PureState if len(dims) == 2 else MultipartiteState
    return cls(tuple(dims), a)
