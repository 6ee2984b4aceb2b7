from __future__ import annotations

from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: dict[str, tuple[str, str]] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        detail = props.get("detail", "")
        if report.outcome == "skipped" and isinstance(report.longrepr, tuple):
            detail = report.longrepr[2].removeprefix("Skipped: ")
        _criteria[key] = (outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def number(key: str) -> int:
        return int(key.split()[0])

    for key in sorted(_criteria, key=number):
        outcome, detail = _criteria[key]
        terminalreporter.write_line(f"criterion {key}: {outcome}" + (f" ({detail})" if detail else ""))
