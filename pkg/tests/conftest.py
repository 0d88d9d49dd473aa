import random

import pytest

from o2power.ring import parse_ring


@pytest.fixture
def Z9():
    return parse_ring("zp2:3")


@pytest.fixture
def Z25():
    return parse_ring("zp2:5")


@pytest.fixture
def F3u():
    return parse_ring("fqu2:3:1")


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running brute-force checks")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
