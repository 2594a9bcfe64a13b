import sys

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--long",
        action="store_true",
        default=False,
        help="run the long validation tier (full n <= 1105 count, ~1-2 min)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip_long = pytest.mark.skip(reason="long tier; enable with --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # the acceptance module records one verdict line per criterion; show them
    # even when output capturing is on
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None) if module else None
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
