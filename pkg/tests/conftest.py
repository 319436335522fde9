import pytest

from app.config import settings
from app.core.poly import parse, reference_form


@pytest.fixture
def quartic_reference():
    return reference_form(2, 4)


@pytest.fixture
def indefinite_quartic():
    """x1^4 - 3 x1^2 x2^2 + x2^4, negative at (1, 1)."""
    return parse("x1^4 - 3 x1^2 x2^2 + x2^4", 2)


@pytest.fixture
def small_capacity(monkeypatch):
    monkeypatch.setattr(settings, "MAX_VARIABLES", 2)
    return settings
