import random

import pytest
from hypothesis import settings

DEFAULT_SEED = 20261015

settings.register_profile("qhowe", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("qhowe")

ACCEPTANCE_LINES: list = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help=f"seed for randomized tests (default {DEFAULT_SEED})")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


@pytest.fixture
def acceptance_line():
    def record(text):
        ACCEPTANCE_LINES.append(text)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
