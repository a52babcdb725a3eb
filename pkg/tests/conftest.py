from __future__ import annotations

from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent

# nodeid -> (label, collection order); filled during collection
_ACCEPTANCE: dict[str, tuple[str, int]] = {}
_OUTCOMES: dict[str, str] = {}


@pytest.fixture(scope="session")
def toy_dir() -> Path:
    return REPO_ROOT / "data" / "toy"


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return REPO_ROOT


def pytest_collection_modifyitems(items):
    order = 0
    for item in items:
        label = getattr(item.function, "acceptance_label", None)
        if label is not None:
            _ACCEPTANCE[item.nodeid] = (label, order)
            order += 1


def pytest_runtest_logreport(report):
    if report.nodeid not in _ACCEPTANCE:
        return
    if report.when == "call":
        _OUTCOMES[report.nodeid] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _OUTCOMES[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for nodeid, (label, _) in sorted(_ACCEPTANCE.items(), key=lambda kv: kv[1][1]):
        outcome = _OUTCOMES.get(nodeid, "not run")
        word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(outcome, outcome.upper())
        tr.write_line(f"[{word}] {label}")
