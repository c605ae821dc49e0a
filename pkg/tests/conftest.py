import pytest

from zetastokes.hp import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    """Default working precision for the whole suite."""
    return PrecisionContext(digits=60)


@pytest.fixture(scope="session")
def ctx_fast():
    """Minimum-precision context for cheap property tests."""
    return PrecisionContext(digits=30)
