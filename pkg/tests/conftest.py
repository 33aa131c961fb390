from fractions import Fraction

import pytest

from reflect_vertex.lattice import ModelParams


@pytest.fixture
def anchor():
    """The hand-computed single-site point a=2, b=3, z=2, w=1."""
    return ModelParams(2, 3), (2,), (1,)


def frac(text):
    return Fraction(text)
