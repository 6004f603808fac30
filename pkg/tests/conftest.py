import pytest

from numentropy.dynamics import Scenario


@pytest.fixture(scope="session")
def decay5():
    return Scenario(name="decay5", model="lindblad-decay", levels=5, dim=6, gamma=1.0, t_final=3.0, dt=1e-3)
