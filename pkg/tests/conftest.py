import random

import pytest
from hypothesis import settings

from helpers import FANO_LINES, family_of

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fano():
    return family_of(*FANO_LINES, width=7)


@pytest.fixture
def rng():
    return random.Random(20061)


_acceptance_lines = []


@pytest.fixture
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
