import os
import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lexkernel.dictionary import associated_graph
from lexkernel.graph import DirectedGraph
from lexkernel.ingest import load_dictionary

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile(
    "ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"
TOY_PATH = FIXTURES / "toy.tsv"

TOY_GK = frozenset({"bad", "dark", "good", "light", "no", "not"})
TOY_KC = frozenset({"no", "not"})
TOY_WAVES = (
    frozenset({"apple", "banana", "tomato"}),
    frozenset({"fruit", "red", "yellow"}),
    frozenset({"color", "edible"}),
)
# word: (L_gk, L_scc)
TOY_LEVELS = {
    "apple": (3, 4), "bad": (0, 1), "banana": (3, 4), "color": (1, 2),
    "dark": (0, 1), "edible": (1, 2), "fruit": (2, 3), "good": (0, 1),
    "light": (0, 1), "no": (0, 0), "not": (0, 0), "red": (2, 3),
    "tomato": (3, 4), "yellow": (2, 3),
}


def load_toy():
    d, report = load_dictionary(TOY_PATH.read_text(), "tsv", stem=False)
    return d, report


@pytest.fixture(scope="session")
def toy_dictionary():
    return load_toy()[0]


@pytest.fixture(scope="session")
def toy_graph(toy_dictionary):
    return associated_graph(toy_dictionary)


@st.composite
def digraphs(draw, max_vertices=8, loops=False, min_vertices=0):
    """Small integer-labelled digraphs."""
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return DirectedGraph(range(n), arcs)


@st.composite
def dictionary_graphs(draw, max_vertices=10):
    """Loopless digraphs in which every vertex has a predecessor."""
    n = draw(st.integers(2, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.floats(0.05, 0.5))
    from lexkernel.synth import random_no_source_digraph

    return random_no_source_digraph(random.Random(seed), n, p)


# --- acceptance summary ----------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    notes = "; ".join(f"{k} {v}" for k, v in item.user_properties)
    _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, notes = _CRITERIA[number]
        line = f"criterion {number}: {verdict}  {title}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
