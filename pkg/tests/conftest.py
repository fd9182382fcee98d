"""
Fixtures compartilhadas dos testes.
"""

import pytest


@pytest.fixture(scope="session")
def prefect_harness():
    """Servidor Prefect efêmero para os testes que executam o flow."""
    from prefect.testing.utilities import prefect_test_harness

    with prefect_test_harness():
        yield
