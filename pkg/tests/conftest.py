import math
from pathlib import Path

import pytest

from segguard.geom import Segment
from segguard.polygon import validate
from segguard.scenefile import load_scene

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

SQ_PTS = [(0, 0), (1, 0), (1, 1), (0, 1)]
L8_PTS = [(0, 0), (8, 0), (8, 8), (5, 8), (5, 3), (0, 3)]
Z10_PTS = [(0, 0), (3, 0), (3, 4), (5, 4), (5, 0), (10, 0), (10, 10), (8, 10), (8, 6), (6, 6), (6, 10), (0, 10)]

L8_SOURCE = Segment((0.5, 1), (7.5, 1))
L8_TARGET = Segment((7.9, 2.5), (7.9, 7.9))
# y of the window line through (5,3) at x = 7.9
L8_TY = 38.6 / 9


@pytest.fixture(scope="session")
def SQ():
    return validate(SQ_PTS)


@pytest.fixture(scope="session")
def L8():
    return validate(L8_PTS)


@pytest.fixture(scope="session")
def Z10():
    return validate(Z10_PTS)


@pytest.fixture(scope="session")
def scenes():
    return {p.stem: load_scene(p) for p in sorted(FIXTURES.glob("*.json")) if p.stem not in ("malformed", "bowtie")}


def close(a, b, tol=1e-9):
    return math.hypot(a[0] - b[0], a[1] - b[1]) <= tol


# acceptance criterion -> (passed, detail); printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
