import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cogsec.model import ChannelRealization  # noqa: E402

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def make_realization(g_main, g_primary, g_eve) -> ChannelRealization:
    """Realization with prescribed squared magnitudes and zero phases."""
    return ChannelRealization(
        np.sqrt(np.asarray(g_main, float)).astype(complex),
        np.sqrt(np.asarray(g_primary, float)).astype(complex),
        np.sqrt(np.asarray(g_eve, float)).astype(complex),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20131101)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
