import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxhecke import samples  # noqa: E402

SYSTEMS_DIR = Path(__file__).resolve().parent.parent / "systems"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    limit = marker.kwargs.get("limit")
    entry = _criteria.setdefault(number, {"title": title, "limit": limit, "ok": True, "seconds": 0.0, "ran": False})
    if rep.when == "call":
        entry["ran"] = True
        entry["seconds"] += rep.duration
    if rep.failed or (rep.when == "setup" and rep.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        in_time = e["limit"] is None or e["seconds"] < e["limit"]
        status = "PASS" if e["ok"] and e["ran"] and in_time else "FAIL"
        limit = f" of {e['limit']}s" if e["limit"] is not None else ""
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}  ({e['seconds']:.1f}s{limit})")


@pytest.fixture(scope="session")
def systems():
    return {name: samples.sample(name) for name in samples.SAMPLE_ROWS}


@pytest.fixture
def d_inf():
    return samples.d_inf()


@pytest.fixture
def a2():
    return samples.a2()


@pytest.fixture
def b2():
    return samples.b2()


@pytest.fixture
def a2tilde():
    return samples.a2tilde()


@pytest.fixture
def q444():
    return samples.q444()


@pytest.fixture
def r3():
    return samples.r3_inf32()

