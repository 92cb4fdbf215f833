import pytest
import sympy as sp

from specpot import families
from specpot.algebra import nu
from specpot.seeds import NodeSpec1, NodeSpec2


@pytest.fixture(scope="session")
def anharmonic():
    """The nu=-3/4 single-node first-family potential."""
    sym = families.gen_family1([NodeSpec1(1, 1, 1)], nu)
    return families.result_at_nu(sym, sp.Rational(-3, 4))


@pytest.fixture(scope="session")
def fusion_symbolic():
    return families.gen_family2([NodeSpec2(0, -1), NodeSpec2(1, 1)], nu)


@pytest.fixture(scope="session")
def fusion(fusion_symbolic):
    return families.result_at_nu(fusion_symbolic, sp.Rational(-1, 2))
