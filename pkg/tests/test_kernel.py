import csv
import io
import json

import pytest
from hypothesis import given

from conftest import TOY_GK, TOY_KC, TOY_LEVELS, TOY_WAVES, dictionary_graphs, digraphs
from lexkernel.errors import EmptyKernelError
from lexkernel.graph import DirectedGraph, quotient, sinks, sources
from lexkernel.kernel import (
    analyze,
    feature_report,
    gk_hierarchy,
    grounding_kernel,
    kernel_core,
    out0,
    scc_hierarchy,
    scc_hierarchy_within_gk,
)

TWO_CYCLE = DirectedGraph([], [("a", "b"), ("b", "a")])
# KC {a,b}; b->c with c<->d; d->e with e<->f
LADDER = DirectedGraph(
    [], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "c"), ("d", "e"), ("e", "f"), ("f", "e")]
)


def one_at_a_time_kernel(g):
    while True:
        s = sorted(sinks(g))
        if not s:
            return g.vertices
        g = g.without(s[:1])


# --- out0 / GK --------------------------------------------------------------


def test_out0_toy(toy_graph):
    assert out0(toy_graph).vertices == toy_graph.vertices - {"apple", "banana", "tomato"}


def test_out0_two_cycle_unchanged():
    assert out0(TWO_CYCLE) == TWO_CYCLE


def test_out0_isolated_vertex():
    assert len(out0(DirectedGraph(["a"]))) == 0


def test_toy_grounding_kernel(toy_graph):
    dec = grounding_kernel(toy_graph)
    assert dec.gk == TOY_GK
    assert dec.strip_order == TOY_WAVES


def test_chain_has_empty_kernel():
    assert grounding_kernel(DirectedGraph([], [("a", "b"), ("b", "c")])).gk == frozenset()


def test_gk_matches_iterated_out0(toy_graph):
    g = toy_graph
    while sinks(g):
        g = out0(g)
    assert g.vertices == grounding_kernel(toy_graph).gk


@given(digraphs(max_vertices=10, loops=True))
def test_gk_is_order_independent_and_partitioned(g):
    dec = grounding_kernel(g)
    assert dec.gk == one_at_a_time_kernel(g)
    layers = [v for w in dec.strip_order for v in w]
    assert len(layers) == len(set(layers))
    assert dec.gk | set(layers) == g.vertices and not dec.gk & set(layers)
    assert len(dec.strip_order) <= len(g)


# --- KC ----------------------------------------------------------------------


def test_toy_kernel_core(toy_graph):
    dec = kernel_core(toy_graph)
    assert dec.kc == TOY_KC and len(dec.source_components) == 1


def test_two_cycle_kernel_core():
    assert kernel_core(TWO_CYCLE).kc == {"a", "b"}


def test_two_chained_two_cycles():
    g = DirectedGraph([], [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c"), ("b", "c")])
    assert kernel_core(g).kc == {"a", "b"}


def test_multiple_sources_are_unioned():
    g = DirectedGraph([], [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c"), ("b", "e"), ("d", "e"), ("e", "b")])
    dec = kernel_core(g)
    assert dec.kc == {"c", "d"}
    g2 = DirectedGraph([], [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")])
    dec2 = kernel_core(g2)
    assert dec2.kc == {"a", "b", "c", "d"} and len(dec2.source_components) == 2


@given(dictionary_graphs())
def test_kc_inside_gk(g):
    dec = kernel_core(g)
    assert dec.kc <= dec.gk
    q = quotient(g)
    for i in sources(q.graph):
        assert q.partition.components[i] <= dec.gk


# --- hierarchies ----------------------------------------------------------------


def test_toy_gk_levels(toy_graph):
    lv = gk_hierarchy(toy_graph)
    assert lv.as_dict() == {w: gk for w, (gk, _) in TOY_LEVELS.items()}
    assert lv.level_set(0) == TOY_GK


def test_toy_scc_levels(toy_graph):
    assert scc_hierarchy(toy_graph).as_dict() == {w: s for w, (_, s) in TOY_LEVELS.items()}


def test_toy_level_relation(toy_graph):
    gk, scc = gk_hierarchy(toy_graph), scc_hierarchy(toy_graph)
    assert all(scc[u] == gk[u] + 1 for u in toy_graph if u not in TOY_KC)


def test_level_relation_can_fail():
    gk, scc = gk_hierarchy(LADDER), scc_hierarchy(LADDER)
    assert gk.as_dict() == dict.fromkeys("abcdef", 0)
    assert scc.as_dict() == {"a": 0, "b": 0, "c": 1, "d": 1, "e": 2, "f": 2}
    assert any(scc[u] != gk[u] + 1 for u in "cdef")


def test_two_cycle_hierarchies_are_zero():
    assert set(gk_hierarchy(TWO_CYCLE).levels.values()) == {0}
    assert set(scc_hierarchy(TWO_CYCLE).levels.values()) == {0}


def test_chain_into_kernel():
    g = DirectedGraph([], [("a", "b"), ("b", "a"), ("b", "c")])
    assert gk_hierarchy(g)["c"] == 1


def test_toy_within_gk(toy_graph):
    lv = scc_hierarchy_within_gk(toy_graph)
    assert lv.as_dict() == {"no": 0, "not": 0, "bad": 1, "good": 1, "dark": 1, "light": 1}


def test_within_gk_single_component():
    assert set(scc_hierarchy_within_gk(TWO_CYCLE).levels.values()) == {0}


def test_within_gk_independent_cycles():
    g = DirectedGraph([], [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")])
    assert set(scc_hierarchy_within_gk(g).levels.values()) == {0}


def test_within_gk_empty_kernel():
    with pytest.raises(EmptyKernelError):
        scc_hierarchy_within_gk(DirectedGraph([], [("a", "b")]))


def longest_path_length(dag):
    memo = {}

    def depth(v):
        if v not in memo:
            memo[v] = max((depth(u) + 1 for u in dag.predecessors(v)), default=0)
        return memo[v]
    return max((depth(v) for v in dag), default=0)


@given(dictionary_graphs())
def test_hierarchy_properties(g):
    dec = kernel_core(g)
    gk, scc = gk_hierarchy(g), scc_hierarchy(g)
    assert set(gk.levels) == set(scc.levels) == g.vertices
    assert min(gk.levels.values()) >= 0 and min(scc.levels.values()) >= 0
    assert gk.level_set(0) == dec.gk
    assert scc.level_set(0) == dec.kc
    assert scc.max_level() == longest_path_length(quotient(g).graph)
    within = scc_hierarchy_within_gk(g, dec.gk) if dec.gk else None
    if within is not None:
        assert set(within.levels) == dec.gk


# --- reports ---------------------------------------------------------------


def test_report_csv_matches_levels_table(toy_graph):
    rows = list(csv.DictReader(io.StringIO(analyze(toy_graph).to_csv())))
    assert [r["word"] for r in rows] == sorted(TOY_LEVELS)
    for r in rows:
        assert (int(r["L_gk"]), int(r["L_scc"])) == TOY_LEVELS[r["word"]]
        assert r["in_gk"] == str(int(r["word"] in TOY_GK))
        assert r["in_kc"] == str(int(r["word"] in TOY_KC))
        assert (r["L_scc_within_gk"] == "") == (r["word"] not in TOY_GK)


def test_sorting_changes_order_only(toy_graph):
    report = analyze(toy_graph)
    by_word = report.rows("word")
    for key in ("gk", "scc"):
        rows = report.rows(key)
        assert rows != by_word
        assert sorted(rows, key=lambda r: r["word"]) == by_word
        col = "L_gk" if key == "gk" else "L_scc"
        assert [r[col] for r in rows] == sorted(r[col] for r in rows)


def test_no_word_outside_gk_has_level_zero(toy_graph):
    assert all(r["L_gk"] > 0 for r in analyze(toy_graph).rows() if not r["in_gk"])


def test_report_json(toy_graph):
    payload = json.loads(analyze(toy_graph).to_json())
    assert payload["gk"] == sorted(TOY_GK) and payload["kc"] == sorted(TOY_KC)
    assert payload["strip_order"] == [sorted(w) for w in TOY_WAVES]


def test_feature_report(toy_graph):
    f = feature_report(toy_graph)
    assert f["dictionary"] == {"vertices": 14, "arcs": 24, "density": 24 / 196}
    assert f["gk"]["vertices"] == 6 and f["kc"]["vertices"] == 2
    assert f["gk"]["arcs"] == 10 and f["kc"]["arcs"] == 2
    assert (f["scc_count"], f["nontrivial_scc_count"], f["largest_scc"]) == (11, 3, 2)
    assert f["strip_waves"] == 3
