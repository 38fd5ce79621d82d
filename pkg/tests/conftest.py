import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from laplace_ci import Observation, exact_interval


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the quadrature kernels once so runtime assertions stay fair."""
    exact_interval(Observation(2, 1), 0.05, k=64)
