import numpy as np
import pytest

from rblse.rbq import RBMatrix

ACCEPTANCE_LINES: list[str] = []


def random_rb(rng, m, n, scale=1.0) -> RBMatrix:
    return RBMatrix(scale * rng.standard_normal((4, m, n)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def record_acceptance():
    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}  {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
