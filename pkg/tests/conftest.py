import pytest
from hypothesis import settings

from staircases.matrix import Matrix

# Reference displays, transcribed row by row.
DISPLAY_P_6_8 = ["00011111", "00111111", "01111111", "11111110", "11111100", "11111000"]
DISPLAY_P_7_8 = DISPLAY_P_6_8 + ["11110000"]
DISPLAY_Q_6_19 = [
    "1110000000000111111",
    "1100000000001111111",
    "1000000000011111111",
    "0000000011111111110",
    "0000000111111111100",
    "0000001111111111000",
]
DISPLAY_R_10_18 = [
    "111000000000000111",
    "110000000000001111",
    "100000000000011111",
    "000000000000111111",
    "000000000001111111",
    "000000011111111111",
    "000000111111111111",
    "000001111111111110",
    "000011111111111100",
    "000111111111111000",
]

# numba compiles on first call, which would trip per-example deadlines
settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def P68():
    return Matrix.from_rows(DISPLAY_P_6_8)


@pytest.fixture
def Q619():
    return Matrix.from_rows(DISPLAY_Q_6_19)


@pytest.fixture
def R1018():
    return Matrix.from_rows(DISPLAY_R_10_18)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
