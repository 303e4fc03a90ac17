import pytest

import weilnear as wn


@pytest.fixture(scope="session")
def dual():
    """Q[eps]/(eps^2)."""
    return wn.dual_numbers()


@pytest.fixture(scope="session")
def eps3():
    """Q[eps]/(eps^3)."""
    return wn.truncated_algebra(["eps"], ["eps^3"])


@pytest.fixture(scope="session")
def eps4():
    """Q[eps]/(eps^4)."""
    return wn.truncated_algebra(["eps"], ["eps^4"])


@pytest.fixture(scope="session")
def jets2():
    """Second-order 2-jets: Q[t1,t2]/m^3, dimension 6."""
    return wn.jet_algebra(2, 2)


@pytest.fixture(scope="session")
def acceptance_algebras(dual, eps4, jets2):
    """The fixed test matrix of the acceptance criteria."""
    return {"dual": dual, "eps4": eps4, "jets2": jets2}
