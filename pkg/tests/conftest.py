import pytest

from jconf import jordan as jd

SMALL = ["Sym3R", "Herm3C", "SpinR1_3", "M3R", "SpinR3_1", "Sym3C", "SpinC4"]
RANK2 = ["Sym2R", "M2R", "SpinR3_2", "Sym2C"]


@pytest.fixture(scope="session")
def sym3r():
    return jd.build_model("Sym3R")


ACCEPTANCE: dict = {}


def record(number: int, ok: bool, detail: str):
    """Store one acceptance line; printed in the terminal summary."""
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
