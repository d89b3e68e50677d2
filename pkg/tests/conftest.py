import json
from pathlib import Path

import pytest

from rpsmax.core import mass_function_from_dict, pmf_from_dict

DATA = Path(__file__).parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture
def example1_pmf():
    """Maximum-entropy PMF on {R,B,G} at full precision (1/117, 4/117, 15/117)."""
    return pmf_from_dict(load("example1_max_rps.json"))


@pytest.fixture
def example1_mass():
    """Maximum-Deng mass function on {R,B,G} at full precision (1/19, 3/19, 7/19)."""
    return mass_function_from_dict(load("example1_max_deng.json"))


# Acceptance criteria report their own pass/fail lines at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
