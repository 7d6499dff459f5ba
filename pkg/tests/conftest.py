import numpy as np
import pytest

from sqnormal.blocks import blocks_close

_ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line; printed in the terminal summary."""

    def _record(name, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def same_form(f1, f2, tol=1e-7):
    """Position-by-position comparison with absolute+relative tolerance."""
    return (
        f1.flavor == f2.flavor
        and len(f1.blocks) == len(f2.blocks)
        and all(blocks_close(a, b, tol, tol) for a, b in zip(f1.blocks, f2.blocks))
    )


def fro(M):
    return float(np.linalg.norm(M, "fro"))
