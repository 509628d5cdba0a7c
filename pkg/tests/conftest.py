import numpy as np
import pytest

from taxicausal import Circle, Euclidean, MinkowskiTaxicab, Taxicab


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def E2():
    return Euclidean(2)


@pytest.fixture
def M():
    return MinkowskiTaxicab(Euclidean(2))


ALL_BACKENDS = [Euclidean(2), Taxicab(2), Circle(10.0), Euclidean(3)]


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
