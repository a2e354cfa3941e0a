import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """``check(number, title, passed, detail)``: record one acceptance line, then assert."""
    def check(number, title, passed, detail):
        line = f"criterion {number:>2}  {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        print(line)
        request.config.stash[_LINES].append((number, line))
        assert passed, line
    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda item: item[0]):
            terminalreporter.write_line(line)
