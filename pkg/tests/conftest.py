import numpy as np
import pytest
from hypothesis import settings

from masseyvar.groups import matrix_group

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("repo")


def _u5(bits: int) -> np.ndarray:
    pos = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    m = np.eye(5, dtype=np.int64)
    for k, (i, j) in enumerate(pos):
        if bits >> k & 1:
            m[i, j] = 1
    return m


@pytest.fixture(scope="session")
def u5_subgroup():
    """Order-16 subgroup of unitriangular 5x5 matrices over F_2 carrying nonvanishing products."""
    return matrix_group([_u5(713), _u5(457)], "U5sub16")
