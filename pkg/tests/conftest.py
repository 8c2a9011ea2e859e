import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line, ``criterion N: PASS|FAIL  detail``, then assert."""
    lines = request.config.stash[_LINES_KEY]

    def check(number: int, title: str, results: list[tuple[str, bool]]):
        ok = all(passed for _, passed in results)
        failed = [label for label, passed in results if not passed]
        detail = "; ".join(label for label, _ in results)
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title} -- {detail}"
        if failed:
            line += f"  [failed: {'; '.join(failed)}]"
        lines.append((number, line))
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
