import pytest

from binomials import checks


@pytest.fixture
def checked():
    """Enable expensive internal re-verification for the duration of a test."""
    checks.enable(True)
    try:
        yield
    finally:
        checks.enable(False)
