import pytest

from diacat import audit


@pytest.fixture(scope="session", autouse=True)
def crossed_module_audit_log():
    """Run structural post-conditions on every crossed module any test
    constructs; a violation raises at the construction site."""
    with audit.capture() as log:
        yield log
