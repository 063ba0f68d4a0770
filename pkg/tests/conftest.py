import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

# derandomized: the same examples every run
settings.register_profile(
    "pdq",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    print_blob=True,
)
settings.load_profile("pdq")


@lru_cache(maxsize=None)
def fixture_report(name: str):
    from pdq.certify import verify_fixture
    return verify_fixture(name, seed=7)


@lru_cache(maxsize=None)
def fixture_resolution(name: str):
    from pdq.certify import load_fixture
    from pdq.resolve import free_resolution
    I, spec = load_fixture(name)
    return I, spec, free_resolution(I)


@pytest.fixture(scope="session")
def reports():
    return fixture_report


@pytest.fixture(scope="session")
def resolutions():
    return fixture_resolution


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
