import pytest


@pytest.fixture
def criterion_line(request):
    """Emit one visible pass/fail line per acceptance criterion, even when
    pytest captures stdout."""
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = []

    def emit(number: int, ok: bool, detail: str):
        text = f"CRITERION {number} [{'PASS' if ok else 'FAIL'}] {detail}"
        lines.append(text)
        if reporter is not None:
            reporter.write_line(text)
        else:
            print(text)

    yield emit
