from importlib import resources

import pytest

from currentgraph.model import parse


def bundled_text(name: str) -> str:
    return resources.files("currentgraph.data").joinpath(name).read_text()


@pytest.fixture(scope="session")
def cascade_s1():
    return parse(bundled_text("cascade_s1.cg"))


K2_TEXT = """group 3 12
v 0 : e0.0
v 1 : e0.1
e 0 sig +1 cur (0,6)
"""


@pytest.fixture(scope="session")
def index2_s1():
    return parse(bundled_text("index2_z3z12.cg"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
