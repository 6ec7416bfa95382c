import pytest
from hypothesis import HealthCheck, settings

from sdcyclic.codes import CodeFamily

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# (m, s, n) points small enough to enumerate and verify exhaustively
SWEEP = [(1, 1, 1), (1, 1, 3), (1, 2, 3), (1, 2, 5), (1, 3, 3), (1, 2, 7), (2, 2, 3)]

_families = {}


def family(m, s, n):
    key = (m, s, n)
    if key not in _families:
        _families[key] = CodeFamily(m, s, n)
    return _families[key]


@pytest.fixture
def fam():
    return family
