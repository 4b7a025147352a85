import pytest

from magiclab.graph import catalog_graph
from magiclab.kernel import BACKENDS


@pytest.fixture(scope="session")
def graphs():
    return {name: catalog_graph(name) for name in ("G1", "G2", "G3", "G4", "G5a", "G5b")}


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
