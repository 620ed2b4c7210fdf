import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ffdist.kernels import numba_kernels, numpy_kernels  # noqa: E402

PRIMES = [3, 5, 7, 11, 13]


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return {"numba": numba_kernels, "numpy": numpy_kernels}[request.param]


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def record(label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        print(ACCEPTANCE_LINES[-1])
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
