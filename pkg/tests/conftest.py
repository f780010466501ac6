import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria: dict[str, tuple[str, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.module.__name__.endswith("test_acceptance"):
            doc = (item.function.__doc__ or item.name).strip()
            label, _, text = doc.partition(": ")
            _criteria[item.nodeid] = (label, text)


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    label, text = _criteria[report.nodeid][:2]
    if report.failed or (report.when == "call" and report.skipped):
        _criteria[report.nodeid] = (label, text, "FAIL")
    elif report.when == "call" and len(_criteria[report.nodeid]) == 2:
        _criteria[report.nodeid] = (label, text, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _criteria.values():
        label, text = entry[:2]
        status = entry[2] if len(entry) > 2 else "NOT RUN"
        terminalreporter.write_line(f"{label} {status}: {text}")
