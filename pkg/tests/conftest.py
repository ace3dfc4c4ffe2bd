import pytest

_ACCEPTANCE = []


@pytest.fixture
def acceptance_rows():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for row in sorted(_ACCEPTANCE, key=lambda r: r.criterion):
        terminalreporter.write_line(row.line())
