import pytest

from quasilef import data_path
from quasilef.presentation import Presentation


def wps(weights, k, theta=1):
    """One-torus presentation: weighted projective space with E of weight k."""
    return Presentation(x_weights=tuple((a,) for a in weights), e_weights=((k,),), theta=(theta,))


@pytest.fixture(scope="session")
def quartic():
    return Presentation.load(data_path("quartic_counterexample.json"))


@pytest.fixture(scope="session")
def p1113():
    return Presentation.load(data_path("weird_p1113.json"))


@pytest.fixture(scope="session")
def ambient_p1113():
    """The toric data of the quartic without any bundle."""
    return Presentation(
        x_weights=((1, 0), (1, 0), (1, 0), (3, 1), (0, 1)), e_weights=(), theta=(1, 1)
    )


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; echoed now and repeated in the terminal summary."""

    def emit(line: str):
        print(line)
        ACCEPTANCE_LINES.append(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
