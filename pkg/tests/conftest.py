"""Pytest configuration and shared fixtures for regusolve tests."""

import os
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Set environment defaults before settings are imported
os.environ.setdefault("REGUSOLVE_LOGS_DIR", "test_logs")
os.environ.setdefault("REGUSOLVE_RESULTS_DIR", "test_results")
os.environ.setdefault("REGUSOLVE_LOG_LEVEL", "WARNING")


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test (several modules together)"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers", "acceptance: mark test as a desk-scale reproduction of published results"
    )


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Seeded generator for test data (not for the code under test)."""
    return np.random.default_rng(20240917)


@pytest.fixture
def diagonal_pair():
    """K = diag(2, 1) and b = (2, 1): the closed-form filter example."""
    return np.diag([2.0, 1.0]), np.array([2.0, 1.0])


@pytest.fixture(scope="session")
def shaw_small():
    """Shaw problem at n = 64, shared across tests."""
    from src.problems import generate
    return generate("shaw", 64)


# Environment-based skip conditions
def skip_if_no_acceptance():
    """Skip test unless desk-scale reproductions are enabled."""
    return pytest.mark.skipif(
        not os.environ.get("RUN_ACCEPTANCE_TESTS"),
        reason="Set RUN_ACCEPTANCE_TESTS=1 to enable acceptance tests"
    )


# Test categories as pytest markers
unit_test = pytest.mark.unit
integration_test = pytest.mark.integration
slow_test = pytest.mark.slow
acceptance_test = pytest.mark.acceptance
