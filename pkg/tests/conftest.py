import pytest

from regtough.graph import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    extremal_graph,
    petersen_graph,
)

_criteria = []
_setup_time = pytest.StashKey[float]()


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def h3():
    return extremal_graph(3, 2)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "setup":
        # shared fixtures do the heavy lifting for some criteria
        item.stash[_setup_time] = rep.duration
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            title = f"{title} [{callspec.id}]"
        duration = rep.duration + (item.stash.get(_setup_time, 0.0) if rep.when == "call" else 0.0)
        _criteria.append((number, title, rep.outcome, duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, duration in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.2f}s)")
