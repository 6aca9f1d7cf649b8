import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stabilab import cache  # noqa: E402

_criteria: dict[str, bool] = {}


def pytest_addoption(parser):
    parser.addoption("--runlong", action="store_true", default=False,
                     help="also run the long quasi-freeness sweeps (n = 5, 6)")


def pytest_configure(config):
    config.addinivalue_line("markers", "long: long-running sweep, needs --runlong")
    config.addinivalue_line("markers", "criterion(name): acceptance criterion")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runlong"):
        return
    skip = pytest.mark.skip(reason="needs --runlong")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.skipped:
        return
    name = marker.args[0]
    if rep.when == "call" or rep.failed:
        _criteria[name] = _criteria.get(name, True) and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: (len(s.split()[0]), s)):
        terminalreporter.write_line(f"{'PASS' if _criteria[name] else 'FAIL'}  {name}")


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    """Keep tests off the user's cache unless a test configures one."""
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    cache.set_cache_dir(None)
    yield
    cache.set_cache_dir(None)
