from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
if str(TESTS_DIR) not in sys.path:
    sys.path.insert(0, str(TESTS_DIR))

FIXTURES = TESTS_DIR / "fixtures"
DEMO_ROOT = FIXTURES / "demo"


@pytest.fixture(scope="session")
def demo_root() -> Path:
    return DEMO_ROOT


@pytest.fixture(scope="session")
def demo_scan(demo_root):
    from cadv.java_parser import scan_project

    return scan_project(demo_root)


@pytest.fixture(scope="session")
def demo_model(demo_scan):
    from cadv.model import SourceMeta, build_model

    meta = SourceMeta(root_path=str(DEMO_ROOT), file_count=len(demo_scan.files),
                      skipped=demo_scan.skipped, source_mtime="2024-05-01T00:00:00Z")
    return build_model(demo_scan.files, meta)


@pytest.fixture(scope="session")
def persistence_file(demo_scan):
    return next(f for f in demo_scan.files if f.path.endswith("Example.java"))


@pytest.fixture(scope="session")
def junit_file(demo_scan):
    return next(f for f in demo_scan.files if f.path.endswith("TestClass.java"))


# ---------------------------------------------------------------------------
# acceptance reporting: one explicit pass/fail line per criterion

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    title = report.nodeid.rsplit("::", 1)[-1]
    _ACCEPTANCE_RESULTS.append((title, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for title, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome}  {title}")
