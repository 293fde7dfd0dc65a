"""Shared fixtures and the acceptance summary printer."""

import time

import pytest

from hyperarcs.onefact import enumerate_factorizations

_ACCEPT_META: dict[str, tuple[str, str]] = {}
_ACCEPT_RESULTS: dict[str, tuple[str, bool, str]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(ident, title): tag a test as an acceptance criterion"
    )


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            ident, title = mark.args
            _ACCEPT_META[item.nodeid] = (ident, title)


def pytest_runtest_logreport(report):
    meta = _ACCEPT_META.get(report.nodeid)
    if meta and report.when == "call":
        ident, title = meta
        _ACCEPT_RESULTS[report.nodeid] = (ident, report.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for _, (ident, passed, title) in sorted(
        _ACCEPT_RESULTS.items(), key=lambda kv: kv[1][0]
    ):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{ident} {verdict}  {title}")


@pytest.fixture(scope="session")
def k6_catalog():
    return enumerate_factorizations(3)


@pytest.fixture(scope="session")
def k8_catalog():
    return enumerate_factorizations(4)


@pytest.fixture(scope="session")
def k10_catalog():
    start = time.monotonic()
    facts = enumerate_factorizations(5)
    return facts, time.monotonic() - start
