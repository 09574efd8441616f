import random

import pytest
from hypothesis import settings

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("ci")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized sampling tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


def clear_caches():
    from chiloc import euler, polytopes

    polytopes.an_pieces.cache_clear()
    polytopes.ehrhart.cache_clear()
    euler.chi0_qpoly.cache_clear()


@pytest.fixture
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
