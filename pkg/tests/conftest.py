import pytest

from finalg.fields import gf

# criterion number -> (passed, label); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_acceptance():
    def record(number: int, label: str, passed: bool) -> None:
        ACCEPTANCE[number] = (passed, label)

    return record


@pytest.fixture(scope="session")
def f2():
    return gf(2)


@pytest.fixture(scope="session")
def f3():
    return gf(3)


@pytest.fixture(scope="session")
def f4():
    return gf(4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, label = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {label}")
