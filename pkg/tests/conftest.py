import pytest

from lieform.constructions import (
    current_algebra,
    divided_powers,
    ground_field,
    o12_extension,
    simple3,
    zassenhaus,
)
from lieform.deformations import fifteen_dim


@pytest.fixture(scope="session")
def s3():
    return simple3()


@pytest.fixture(scope="session")
def o12():
    return divided_powers(2)


@pytest.fixture(scope="session")
def ext_1x():
    return o12_extension([[0], [1]])


@pytest.fixture(scope="session")
def fifteen():
    return {(b, d): fifteen_dim(b, d) for b in (0, 1) for d in (0, 1)}


def small_lie_algebras():
    """Graded Lie tables of small dimension used across the property tests."""
    S = simple3()
    return {
        "s": S,
        "W1(2)": zassenhaus(2),
        "s(x)K": current_algebra(S, ground_field()),
        "s(x)O1(1)": current_algebra(S, divided_powers(1)),
        "ext U=0": o12_extension([]),
        "ext U=<1,x>": o12_extension([[0], [1]]),
    }
