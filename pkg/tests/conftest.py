import pytest

from galemb.catalog import instantiate
from galemb.groups import PrimeContext, make_presentation


@pytest.fixture
def phi2_41_p3():
    return instantiate("Phi2(41)", 3)


@pytest.fixture
def phi4_221a_p3():
    return instantiate("Phi4(221)a", 3)


@pytest.fixture
def abelian_p3():
    """C_3 x C_9 x C_3 with no relations beyond the orders."""
    ctx = PrimeContext.for_prime(3)
    return make_presentation(ctx, [("x", 1), ("y", 2), ("k", 1)])
