import pytest

from entrokit.phasespace import PhaseSpace
from entrokit.stabilizer import enumerate_isotropic


@pytest.fixture(scope="session")
def corpus():
    """Cached enumeration of all isotropic subgroups per (d, n)."""
    cache = {}

    def get(d, n):
        if (d, n) not in cache:
            cache[(d, n)] = list(enumerate_isotropic(PhaseSpace(n, d)))
        return cache[(d, n)]

    return get
