import pytest

from projarr.profile import compute_profile

from oracles import all_fixtures

ACCEPTANCE_LOG = []


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


@pytest.fixture(scope="session")
def fixture_profiles(fixtures):
    return [(arr, compute_profile(arr)) for arr in fixtures]


@pytest.fixture
def acceptance():
    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LOG.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
