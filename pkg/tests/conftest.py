import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from supraclust import MultilayerNetwork

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("stress", max_examples=2000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_network(rng, n, L, p=0.3, weighted=True, low=0.0):
    """Arcs i.i.d. with probability ``p``; weights uniform on (low, 1]."""
    order = n * L
    mask = rng.random((order, order)) < p
    np.fill_diagonal(mask, False)
    w = (1.0 - rng.random((order, order)) * (1.0 - low)) if weighted else np.ones((order, order))
    return MultilayerNetwork(np.where(mask, w, 0.0), n)


def random_sizes(rng):
    return int(rng.integers(3, 7)), int(rng.integers(1, 4))


@st.composite
def networks(draw, max_nodes=5, max_layers=3, weighted=True):
    n = draw(st.integers(1, max_nodes))
    L = draw(st.integers(1, max_layers))
    order = n * L
    arcs = draw(st.lists(st.booleans(), min_size=order * order, max_size=order * order))
    if weighted:
        ws = draw(st.lists(st.floats(1e-3, 1e3), min_size=order * order, max_size=order * order))
    else:
        ws = [1.0] * (order * order)
    w = np.where(np.array(arcs).reshape(order, order), np.array(ws).reshape(order, order), 0.0)
    np.fill_diagonal(w, 0.0)
    return MultilayerNetwork(w, n)


@pytest.fixture
def cycle():
    """3 nodes, 1 layer, arcs 1->2->3->1 with unit weights."""
    return MultilayerNetwork([[0, 1, 0], [0, 0, 1], [1, 0, 0]], node_labels=["1", "2", "3"])


@pytest.fixture
def complete3():
    return MultilayerNetwork(np.ones((3, 3)) - np.eye(3))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    results = getattr(__import__("sys").modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, status, detail = results[num]
        line = f"criterion {num:>2}: {status}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
