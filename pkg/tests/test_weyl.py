from __future__ import annotations

import itertools

import pytest

from qstrata.cartan import Weight, build_cartan
from qstrata.errors import NotBruhatComparable, NotReduced, TooLong
from qstrata.weyl import (
    WeylElement,
    all_elements,
    bruhat_le,
    inversion_sequence,
    is_reduced,
    longest_element,
    parse_word,
    reduced_words,
    v_chain,
)

ORDERS = {("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48, ("G", 2): 12, ("D", 4): 192}


def E(d, *word):
    return WeylElement.from_word(d, word)


@pytest.mark.parametrize("label,rank", sorted(ORDERS))
def test_group_orders(label, rank):
    d = build_cartan(label, rank)
    assert len(all_elements(d)) == ORDERS[label, rank]
    assert longest_element(d).length == len(d.positive_roots)


def test_action_examples():
    d = build_cartan("A", 2)
    L1 = Weight.fundamental(d, (1, 0))
    assert E(d, 1).act(L1) == L1 - Weight.from_root(d, (1, 0))
    assert longest_element(d).act(L1) == L1 - Weight.from_root(d, (1, 1))
    for i in d.index_set:
        assert E(d, i).apply_root(d.simple_root(i)) == tuple(-c for c in d.simple_root(i))


def test_reduced_words_examples():
    d = build_cartan("A", 2)
    assert reduced_words(longest_element(d)) == [(1, 2, 1), (2, 1, 2)]
    assert reduced_words(WeylElement.identity(d)) == [()]
    assert len(reduced_words(longest_element(build_cartan("A", 3)))) == 16
    with pytest.raises(TooLong):
        reduced_words(longest_element(build_cartan("A", 3)), max_count=10)


@pytest.mark.parametrize("label,rank", [("A", 2), ("A", 3), ("B", 2)])
def test_reduced_words_match_exhaustive_search(label, rank):
    d = build_cartan(label, rank)
    for w in all_elements(d):
        brute = [
            word for word in itertools.product(d.index_set, repeat=w.length)
            if E(d, *word) == w
        ]
        assert reduced_words(w) == sorted(brute)


def test_normal_form_is_lex_least():
    d = build_cartan("A", 3)
    for w in all_elements(d):
        assert w.word == reduced_words(w)[0]


def _bruhat_by_subwords(v, w):
    word = w.word
    return any(
        E(w.datum, *(word[k] for k in idx)) == v
        for idx in itertools.combinations(range(len(word)), v.length)
    )


@pytest.mark.parametrize("label,rank", [("A", 2), ("A", 3), ("B", 2), ("G", 2)])
def test_bruhat_matches_subword_oracle(label, rank):
    d = build_cartan(label, rank)
    for v in all_elements(d):
        for w in all_elements(d):
            assert bruhat_le(v, w) == _bruhat_by_subwords(v, w)


def test_bruhat_examples():
    d = build_cartan("A", 2)
    assert bruhat_le(E(d, 1), E(d, 1, 2))
    assert not bruhat_le(E(d, 1), E(d, 2))
    d3 = build_cartan("A", 3)
    assert bruhat_le(E(d3, 2), longest_element(d3))


def test_inversion_sequence():
    d = build_cartan("A", 2)
    assert inversion_sequence(d, (1, 2, 1)) == [(1, 0), (1, 1), (0, 1)]
    assert inversion_sequence(d, (1,)) == [(1, 0)]
    assert inversion_sequence(d, (2, 1, 2)) == [(0, 1), (1, 1), (1, 0)]
    with pytest.raises(NotReduced):
        inversion_sequence(d, (1, 1))


@pytest.mark.parametrize("label,rank", [("A", 3), ("B", 3)])
def test_inversion_sequence_lists_inversion_set(label, rank):
    d = build_cartan(label, rank)
    for w in all_elements(d):
        for word in reduced_words(w)[:3]:
            seq = inversion_sequence(d, word)
            assert len(set(seq)) == len(seq)
            assert set(seq) == w.inversion_set()


def test_v_chain_examples():
    d = build_cartan("A", 2)
    ch = v_chain(d, (1, 2, 1), E(d, 2))
    assert [str(x) for x in ch.v_le] == ["e", "e", "2", "2"]
    assert ch.J == (1, 3)
    ch = v_chain(d, (1, 2, 1), WeylElement.identity(d))
    assert all(x.is_identity() for x in ch.v_le) and ch.J == (1, 2, 3)
    ch = v_chain(d, (1, 2, 1), longest_element(d))
    assert list(ch.v_le) == list(ch.w_le) and ch.J == ()
    with pytest.raises(NotBruhatComparable):
        v_chain(d, (1,), E(d, 2))


def test_v_chain_ends_at_v():
    d = build_cartan("A", 3)
    for word in reduced_words(longest_element(d)):
        for v in all_elements(d):
            ch = v_chain(d, word, v)
            assert ch.v_le[-1] == v
            assert all(bruhat_le(a, b) for a, b in zip(ch.v_le, ch.w_le))


def test_words():
    d = build_cartan("A", 2)
    assert parse_word("1,2,1") == (1, 2, 1)
    assert parse_word("") == ()
    assert is_reduced(d, (1, 2, 1)) and not is_reduced(d, (1, 2, 1, 2))
