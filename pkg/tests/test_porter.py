import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from lexkernel.porter import measure, porter_stem


def load_vocabulary():
    pairs = []
    for line in (FIXTURES / "porter_vocabulary.tsv").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        word, stem = line.split("\t")
        pairs.append((word, stem))
    return pairs


VOCABULARY = load_vocabulary()


def test_vocabulary_size():
    assert len(VOCABULARY) == 1000


def test_vocabulary_full_agreement():
    wrong = [(w, s, porter_stem(w)) for w, s in VOCABULARY if porter_stem(w) != s]
    assert wrong == []


@pytest.mark.parametrize(
    "word,m",
    [("tr", 0), ("ee", 0), ("tree", 0), ("y", 0), ("by", 0),
     ("trouble", 1), ("oats", 1), ("trees", 1), ("ivy", 1),
     ("troubles", 2), ("private", 2), ("oaten", 2), ("orrery", 2)],
)
def test_measure(word, m):
    assert measure(word) == m


@pytest.mark.parametrize(
    "word,stem",
    [
        ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"), ("cats", "cat"),
        ("feed", "feed"), ("agreed", "agre"), ("plastered", "plaster"), ("bled", "bled"),
        ("motoring", "motor"), ("sing", "sing"), ("conflated", "conflat"),
        ("troubled", "troubl"), ("sized", "size"), ("hopping", "hop"), ("tanned", "tan"),
        ("falling", "fall"), ("hissing", "hiss"), ("fizzed", "fizz"), ("failing", "fail"),
        ("filing", "file"), ("happy", "happi"), ("sky", "sky"), ("relational", "relat"),
        ("generalizations", "gener"), ("oscillators", "oscil"),
    ],
)
def test_worked_examples(word, stem):
    assert porter_stem(word) == stem


@pytest.mark.parametrize("word", ["", "a", "s", "is", "as", "xs", "x1s", "Running", "naïves", "co-ops"])
def test_short_or_non_lowercase_words_pass_through(word):
    assert porter_stem(word) == word


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", max_size=14))
def test_stem_never_grows(word):
    stem = porter_stem(word)
    assert len(stem) <= len(word)
    assert stem[:1] == word[:1]
