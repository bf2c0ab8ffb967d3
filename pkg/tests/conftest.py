from fractions import Fraction

import pytest

from nellipse.locus import Scene
from nellipse.numeric import quad_make

F = Fraction


@pytest.fixture
def circle_scene() -> Scene:
    return Scene(((F(0), F(0)),), F(1))


@pytest.fixture
def two_focus_scene() -> Scene:
    return Scene(((F(-1), F(0)), (F(1), F(0))), F(4))


@pytest.fixture
def c_scene() -> Scene:
    """Collinear three-focus scene with s = 1 (the almost-circles curve)."""
    return Scene(((F(-1), F(0)), (F(0), F(0)), (F(1), F(0))), F(1))


@pytest.fixture
def lemniscate_scene() -> Scene:
    return Scene(((F(-1), F(0)), (F(0), F(0)), (F(1), F(0))), F(0))


@pytest.fixture
def van_schooten() -> Scene:
    return Scene(((F(-1), F(0)), (F(1), F(0)), (F(0), quad_make(0, 1, 3))), F(0))
