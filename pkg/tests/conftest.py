import pytest

from lafuzzy import CayleyTable, example_table


@pytest.fixture
def ex():
    return example_table()


@pytest.fixture
def trivial():
    return CayleyTable.from_rows([[0]])


@pytest.fixture
def const2():
    # t(a,b) = 1 on {1,2}
    return CayleyTable.from_one_based([[1, 1], [1, 1]])


@pytest.fixture
def z2():
    return CayleyTable.from_one_based([[1, 2], [2, 1]])


# --- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {self.number}: {status}  {self.title}")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
