import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TOY_PATH
from lexkernel.dictionary import (
    Dictionary,
    Entry,
    associated_graph,
    dictionary_from_graph,
    dumps,
    dumps_json,
    loads,
    loads_json,
    validate,
)
from lexkernel.errors import (
    DuplicateEntryError,
    EmptyDefinitionError,
    NotClosedError,
    ParseError,
    SelfDefinitionError,
)
from lexkernel.graph import sources
from lexkernel.synth import random_dictionary


@st.composite
def dictionaries(draw):
    return random_dictionary(random.Random(draw(st.integers(0, 10**9))), draw(st.integers(2, 12)))


def test_toy_table_is_valid():
    d = loads(TOY_PATH.read_text())
    assert len(d) == 14
    assert d["apple"].definition == {"red", "fruit"}


def test_self_definition():
    with pytest.raises(SelfDefinitionError) as info:
        validate([Entry("good", ["good"])])
    assert info.value.word == "good"


def test_empty_definition():
    with pytest.raises(EmptyDefinitionError) as info:
        validate([Entry("x", [])])
    assert info.value.word == "x"


def test_duplicate_entry():
    with pytest.raises(DuplicateEntryError):
        validate([Entry("a", ["b"]), Entry("b", ["a"]), Entry("a", ["b"])])


def test_not_closed_lists_missing_words():
    with pytest.raises(NotClosedError) as info:
        validate([Entry("a", ["b", "zz", "yy"]), Entry("b", ["a"])])
    assert info.value.missing == ["yy", "zz"]


def test_duplicate_definientes_collapse():
    d = validate([Entry("a", ["b", "b"]), Entry("b", ["a"])])
    assert d["a"].definition == {"b"}


def test_two_entries_make_a_two_cycle():
    g = associated_graph(validate([Entry("a", ["b"]), Entry("b", ["a"])]))
    assert set(g.arcs()) == {("a", "b"), ("b", "a")}


def test_toy_graph_in_degree(toy_graph):
    assert toy_graph.predecessors("apple") == {"red", "fruit"}
    assert toy_graph.in_degree("apple") == 2


@given(dictionaries())
def test_in_degree_equals_definition_size(d):
    g = associated_graph(d)
    assert all(g.in_degree(w) == len(d[w].definition) for w in d)
    assert not g.self_loops() and not sources(g)


@given(dictionaries())
def test_graph_round_trip(d):
    assert dictionary_from_graph(associated_graph(d)) == d


@given(dictionaries())
def test_text_round_trips_are_bit_exact(d):
    text = dumps(d)
    assert loads(text) == d and dumps(loads(text)) == text
    js = dumps_json(d)
    assert loads_json(js) == d and dumps_json(loads_json(js)) == js


def test_loads_skips_comments_and_blank_lines():
    d = loads("# header\n\na\tb\nb\ta\n")
    assert d.words == ["a", "b"]


def test_loads_reports_line_number():
    with pytest.raises(ParseError) as info:
        loads("a\tb\nb\ta\tc\n")
    assert info.value.line == 2


def test_loads_json_rejects_non_list():
    with pytest.raises(ParseError):
        loads_json('{"word": "a"}')


def test_dictionary_equality_ignores_input_order():
    a = Dictionary([Entry("a", ["b"]), Entry("b", ["a"])])
    b = Dictionary([Entry("b", ["a"]), Entry("a", ["b"])])
    assert a == b and hash(a) == hash(b)
