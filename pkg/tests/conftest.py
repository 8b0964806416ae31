import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# Pytest configuration
pytest_plugins = []


# Custom markers
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")


# Test collection configuration
def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on file location."""
    for item in items:
        # Add markers based on file path
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)
        elif "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)


# Fixtures for test environment
@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Run every test against the built-in defaults, whatever the shell exports."""
    for name in ("BCLAB_SEED", "BCLAB_LOG_LEVEL", "BCLAB_WORKERS", "BCLAB_OUTPUT_FORMAT"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    """Seeded generator for property tests."""
    return np.random.default_rng(20240601)


@pytest.fixture
def write_table_file(tmp_path):
    """Write a tabulated (n, p[, q]) file and return its path.

    Usage:
        path = write_table_file(p, q, certified=True)
    """
    from borel_cantelli_lab.models.tabulated import write_table

    def _write(p, q=None, certified=False, name="terms.txt"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as stream:
            write_table(stream, np.asarray(p, dtype=float), None if q is None else np.asarray(q, dtype=float), certified)
        return str(path)

    return _write


