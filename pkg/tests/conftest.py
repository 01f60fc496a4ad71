import pytest

from tubtilt.verify import context_for
from tubtilt.weights import TUBULAR_TYPES


@pytest.fixture(scope="session", params=TUBULAR_TYPES, ids=lambda ws: ",".join(map(str, ws)))
def any_ctx(request):
    return context_for(request.param)


@pytest.fixture(scope="session")
def ctx2222():
    return context_for((2, 2, 2, 2))


@pytest.fixture(scope="session")
def ctx236():
    return context_for((2, 3, 6))


@pytest.fixture(scope="session")
def ctx244():
    return context_for((2, 4, 4))
