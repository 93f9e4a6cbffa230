import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import ACCEPTANCE_LINES  # noqa: E402
from pptrace import field_tower as ft  # noqa: E402


@pytest.fixture(params=[2, 3], ids=lambda m: f"m{m}")
def small(request):
    return ft.make_params(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def rand_elements(p, n, rng):
    return ft.decode(p, rng.integers(0, p.q2, size=n, dtype=np.int64))


def grid(p, xs, ys):
    """Broadcast two batches against each other as an (len(xs), len(ys)) grid."""
    return (
        ft.Element(xs.a[:, None], xs.b[:, None]),
        ft.Element(ys.a[None, :], ys.b[None, :]),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
