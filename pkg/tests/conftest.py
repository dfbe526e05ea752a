import numpy as np
import pytest

from schatten_geom.oracles import random_ensemble


def cgauss(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def pairs():
    """A small deterministic bank of (X, Y) pairs across ensembles and sizes."""
    out = []
    for kind in ("ComplexGaussian", "PSD", "ZeroTrace", "RealGaussian"):
        for n in (2, 3, 5):
            g = np.random.default_rng([n, len(kind)])
            out.append((random_ensemble(kind, n, g), random_ensemble(kind, n, g)))
    return out


PS = [1.1, 1.5, 2.0, 3.0, 4.0]

# one "PASS/FAIL criterion N" line per acceptance criterion, filled by test_acceptance
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
