import pytest

from gcconf import _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run a test once per available polynomial kernel."""
    prev = _backend.use(request.param)
    yield request.param
    _backend.use(prev)


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(k, ok, detail, seconds, limit)."""

    def record(k, ok, detail, seconds, limit=None):
        within = limit is None or seconds < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        line = f"criterion {k:2d}: {status}  {detail}  [{seconds:.2f}s{budget}]"
        ACCEPTANCE[k] = line
        print(line)
        return ok and within

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
