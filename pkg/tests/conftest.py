from __future__ import annotations

import math
from functools import lru_cache

import pytest
from hypothesis import settings

from clustervol.torus import solve_torus
from clustervol.twobridge import continued_fraction, solve_two_bridge

settings.register_profile("default", deadline=None)
settings.load_profile("default")

TORUS_WORDS = (
    "RL",
    "RLL",
    "RRL",
    "RRLL",
    "RRRL",
    "RLRLL",
    "RLLLL",
    "RRRLLL",
    "RLRRLLL",
    "RRRRLRLL",
    "RRRRRRRL",
    "RLRLRLRL",
    "RLLRRRLLLL",
)

FRACTIONS = tuple(
    (p, q) for p in range(5, 16) for q in range(2, p) if 2 * q < p and math.gcd(p, q) == 1
)


@lru_cache(maxsize=None)
def torus_pattern(word: str):
    return solve_torus(word)


@lru_cache(maxsize=None)
def bridge_pattern(p: int, q: int):
    return solve_two_bridge(continued_fraction(p, q))


@pytest.fixture(params=TORUS_WORDS)
def torus_pat(request):
    return torus_pattern(request.param)


@pytest.fixture(params=FRACTIONS, ids=[f"{q}/{p}" for p, q in FRACTIONS])
def bridge_pat(request):
    return bridge_pattern(*request.param)


# filled by test_acceptance.report and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
