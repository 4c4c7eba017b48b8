"""Shared fixtures; the expensive solitary-wave solves are session-scoped."""

import numpy as np
import pytest

from fkplab.ground_state import FkpParams, petviashvili_solve
from fkplab.spectral import make_grid


@pytest.fixture(scope="session")
def carrier_a2():
    """alpha = 2, c = 2 profile on the reference 1D grid."""
    return petviashvili_solve(FkpParams(2.0, -1, 2.0), make_grid(100.0, 4096))


@pytest.fixture(scope="session")
def carrier_a15():
    """alpha = 3/2, c = 2 profile; wide box for the algebraic tail."""
    return petviashvili_solve(FkpParams(1.5, -1, 2.0), make_grid(200.0, 8192))


@pytest.fixture(scope="session")
def carrier_a1():
    """alpha = 1, c = 2 profile; the slow x^-2 tail needs the widest box."""
    return petviashvili_solve(FkpParams(1.0, -1, 2.0), make_grid(320.0, 8192))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
