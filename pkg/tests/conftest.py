import pytest
from hypothesis import HealthCheck, settings

from rhobisim.models import automaton, lts_from_edges

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def abc_sum():
    """p0 -a-> p1, p1 -b-> p2, p1 -c-> p3: the process a(b + c)."""
    return lts_from_edges(4, ["a", "b", "c"], [(0, "a", 1), (1, "b", 2), (1, "c", 3)], ["p0", "p1", "p2", "p3"])


@pytest.fixture
def ab_ac():
    """q0 -a-> q1 -b-> q3 and q0 -a-> q2 -c-> q4: the process ab + ac."""
    return lts_from_edges(
        5, ["a", "b", "c"], [(0, "a", 1), (1, "b", 3), (0, "a", 2), (2, "c", 4)], ["q0", "q1", "q2", "q3", "q4"]
    )


@pytest.fixture
def one_step():
    return lts_from_edges(2, ["a"], [(0, "a", 1)], ["x0", "x1"])


@pytest.fixture
def fork():
    return lts_from_edges(3, ["a"], [(0, "a", 1), (0, "a", 2)], ["y0", "y1", "y2"])


@pytest.fixture
def wa_scalar():
    return automaton([1], {"a": [[0]]})


@pytest.fixture
def wa_shift():
    return automaton([1, 0], {"a": [[0, 1], [0, 0]]})
