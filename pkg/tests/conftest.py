import pytest

# criterion number -> (status, note); filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        status, note = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {status}" + (f" ({note})" if note else ""))


@pytest.fixture
def record():
    def _record(num, status, note=""):
        ACCEPTANCE[num] = (status, note)
        print(f"criterion {num}: {status}" + (f" ({note})" if note else ""))
    return _record
