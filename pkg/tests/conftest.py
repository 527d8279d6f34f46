import pytest

from weylforge import commalg
from weylforge.rootsys import validate_gcm

GCMS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "C2": [[2, -1], [-2, 2]],
    "G2": [[2, -3], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
}


@pytest.fixture
def A():
    return commalg.PolyAlgebra(1)


@pytest.fixture
def gcm():
    return lambda name: validate_gcm(GCMS[name])
