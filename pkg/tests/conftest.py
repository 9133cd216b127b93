import numpy as np
import pytest

# log grid spanning the whole useful range of p
WIDE_GRID = [float(p) for p in np.geomspace(1e-7, 0.99, 400)]
# grid used for formula-vs-enumeration comparisons
ORACLE_GRID = [float(p) for p in np.geomspace(1e-6, 0.99, 200)]


def prefix_free(words):
    """True when no word is a proper prefix of (or equal to) another."""
    ordered = sorted(words)
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))


@pytest.fixture(scope="session")
def wide_grid():
    return WIDE_GRID


@pytest.fixture(scope="session")
def oracle_grid():
    return ORACLE_GRID


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
