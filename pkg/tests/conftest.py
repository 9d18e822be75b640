from __future__ import annotations

from pathlib import Path

import pytest

from oracles import coloring_program
from xasp import parse_aspif, parse_program

DATA = Path(__file__).parent / "data"

_criteria: dict = {}


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def p1():
    return parse_program((DATA / "p1.lp").read_text())


@pytest.fixture(scope="session")
def p1_aspif():
    return parse_aspif((DATA / "p1.aspif").read_text())


@pytest.fixture(scope="session")
def bob():
    return parse_program((DATA / "bob.lp").read_text())


@pytest.fixture(scope="session")
def eye():
    return parse_program((DATA / "eye.lp").read_text())


@pytest.fixture(scope="session")
def coloring():
    return parse_program(coloring_program())


def corpus() -> dict:
    out = {name: parse_program((DATA / f"{name}.lp").read_text()) for name in ("p1", "bob", "eye")}
    out["coloring"] = parse_program(coloring_program())
    return out


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed or (report.when == "call" and report.skipped)
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=lambda n: (int(str(n).rstrip("abcd")), str(n))):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
