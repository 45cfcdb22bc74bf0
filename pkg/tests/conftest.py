import hypothesis
import pytest

hypothesis.settings.register_profile(
    "ci", max_examples=60, deadline=None, derandomize=True)
hypothesis.settings.load_profile("ci")

ACCEPTANCE_RESULTS: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
