import pytest

from graphs import bidirected_path, complete_bidirected, cycle


@pytest.fixture
def triangle():
    """Directed 3-cycle 0 -> 1 -> 2 -> 0."""
    return cycle(3)


@pytest.fixture
def k3():
    return complete_bidirected(3)


@pytest.fixture
def k4():
    return complete_bidirected(4)


@pytest.fixture
def bipath():
    return bidirected_path(3)
