from __future__ import annotations

import itertools
import random

import pytest

from qstrata.cartan import Weight, build_cartan
from qstrata.convex import convex_order_for_word
from qstrata.errors import DescentViolation, NotPrefixPresentation, ZeroElement
from qstrata.minors import minor_at
from qstrata.shuffle import ShuffleElement, shuffle_product
from qstrata.strata import (
    KostantDatum,
    bi_le,
    census,
    census_oracle,
    check_flag_membership,
    kostant_partition_count,
    lex_le,
    membership_A,
    membership_families_agree,
    reflect_roots,
    richardson_roots,
    rlex_le,
    support_membership,
)
from qstrata.weyl import WeylElement, all_elements, bruhat_le, longest_element, reduced_words, v_chain

A2 = build_cartan("A", 2)
A3 = build_cartan("A", 3)
L1 = Weight.fundamental(A2, (1, 0))


def E(*word, d=A2):
    return WeylElement.from_word(d, word)


def W(*word, d=A2):
    return ShuffleElement.word(d, word)


def test_membership_examples():
    assert membership_A(W(1), E(1), E()) == (True, True)
    assert membership_A(W(1), E(2), E())[0] is False
    unit = ShuffleElement.unit(A2)
    for w in all_elements(A2):
        for v in all_elements(A2):
            assert membership_A(unit, w, v) == (True, True)
            assert support_membership(unit, w, v) == (True, True)
    with pytest.raises(ZeroElement):
        membership_A(ShuffleElement.zero(A2, (1, 0)), E(1), E())


def test_support_examples():
    x = minor_at(L1, longest_element(A2), E())
    assert x == W(1, 2)
    assert support_membership(x, longest_element(A2), E()) == (True, True)
    assert support_membership(W(1), E(2), E())[0] is False


def test_test_families_agree_on_algebra_elements():
    # products of letters span the image of the embedding; single words need not lie in it
    letters = [W(1), W(2)]
    elements = []
    for n in range(1, 4):
        for combo in itertools.product(letters, repeat=n):
            x = combo[0]
            for y in combo[1:]:
                x = x * y
            elements.append(x)
    for x in elements:
        for w in all_elements(A2):
            for v in all_elements(A2):
                assert membership_families_agree(x, w, v)


def test_flag_membership_examples():
    rows = check_flag_membership(L1, (1, 2, 1), E(2))
    assert len(rows) == 4 and all(r.passes for r in rows)
    assert rows[0].w_k == "e"
    lam = Weight.fundamental(A3, (0, 1, 0))
    rows = check_flag_membership(lam, longest_element(A3).word, WeylElement.identity(A3))
    assert all(r.passes for r in rows)


def test_flag_membership_all_a2():
    for i in (1, 2):
        lam = Weight.fundamental(A2, [int(j == i) for j in (1, 2)])
        for w in all_elements(A2):
            for word in reduced_words(w):
                for v in all_elements(A2):
                    if bruhat_le(v, w):
                        assert all(r.passes for r in check_flag_membership(lam, word, v))


def test_richardson_roots():
    assert richardson_roots(A2, (1, 2, 1), (1,)) == [(1, 1), (0, 1)]
    assert richardson_roots(A2, (1, 2, 1), (1, 2, 1)) == []
    assert richardson_roots(A2, (1, 2, 1), ()) == [(1, 0), (1, 1), (0, 1)]
    with pytest.raises(NotPrefixPresentation):
        richardson_roots(A2, (1, 2, 1), (2,))
    with pytest.raises(NotPrefixPresentation):
        richardson_roots(A2, (1, 1), ())


def test_census_examples():
    count, data = census(A2, (1, 2, 1), (), (1, 1))
    assert count == 2
    assert {d.roots for d in data} == {((1, 1),), ((0, 1), (1, 0))}
    assert census(A2, (1, 2, 1), (1,), (1, 0))[0] == 0
    assert census(A2, (1, 2, 1), (1,), (0, 0)) == (1, [KostantDatum((), (0, 0))])
    assert census_oracle(A2, (1, 2, 1), (), (0, 0)) == 1


def test_census_matches_oracle_a2():
    betas = [b for b in itertools.product(range(5), repeat=2) if sum(b) <= 4]
    for w in all_elements(A2):
        for word in reduced_words(w):
            for p in range(len(word) + 1):
                for beta in betas:
                    assert census(A2, word, word[:p], beta)[0] == census_oracle(A2, word, word[:p], beta)


@pytest.mark.parametrize("label,rank", [("A", 2), ("A", 3), ("B", 2)])
def test_full_census_counts_kostant_partitions(label, rank):
    d = build_cartan(label, rank)
    word = longest_element(d).word
    for beta in itertools.product(range(3), repeat=rank):
        assert census(d, word, (), beta)[0] == kostant_partition_count(d, beta)


def test_kostant_partition_counts():
    assert kostant_partition_count(A2, (1, 1)) == 2
    assert kostant_partition_count(A3, (1, 1, 1)) == 4
    assert kostant_partition_count(A2, (2, 2)) == 3


def test_sequence_orders():
    order = convex_order_for_word(A2, (1, 2, 1))  # a1 < a1+a2 < a2
    # three sequences of total weight 2 a1 + 2 a2
    x = [(2, 2)]
    y = [(0, 1), (1, 1), (1, 0)]
    z = [(0, 2), (2, 0)]
    # left: first entries compare rays, then multiples on a common ray
    assert lex_le(order, x, y) and not lex_le(order, y, x)
    assert lex_le(order, y, z) and not lex_le(order, z, y)
    # right: the later ray at the end is the smaller sequence
    assert rlex_le(order, x, y) and not rlex_le(order, y, x)
    assert rlex_le(order, y, z) and not rlex_le(order, z, y)
    assert bi_le(order, x, y) and bi_le(order, y, z) and bi_le(order, x, x)
    assert not bi_le(order, z, x)


def test_grouped_datum():
    k = KostantDatum(((0, 1), (0, 1), (1, 0)), (1, 2))
    assert k.grouped() == ((0, 2), (1, 0))


def test_reflect_roots():
    t = reflect_roots(1, E(2), E())
    assert t.pairs == [((1, 1), (0, 1))]
    assert t.holds
    assert reflect_roots(1, E(), E()).pairs == []
    with pytest.raises(DescentViolation):
        reflect_roots(1, E(1), E())
    for d in (A2, A3):
        for i in d.index_set:
            for w in all_elements(d):
                for v in all_elements(d):
                    if not w.has_left_descent(i) and not v.has_left_descent(i):
                        assert reflect_roots(i, w, v).holds


def test_products_stay_in_stratum():
    rng = random.Random(7)
    lams = [Weight.fundamental(A3, [int(j == i) for j in (1, 2, 3)]) for i in (1, 2, 3)]
    for _ in range(20):
        w = rng.choice(all_elements(A3))
        word = rng.choice(reduced_words(w))
        v = rng.choice([u for u in all_elements(A3) if bruhat_le(u, w)])
        ch = v_chain(A3, word, v)
        j, k = rng.randrange(len(word) + 1), rng.randrange(len(word) + 1)
        x = minor_at(rng.choice(lams), ch.w_le[j], ch.v_le[j])
        y = minor_at(rng.choice(lams), ch.w_le[k], ch.v_le[k])
        assert membership_A(shuffle_product(x, y), w, v) == (True, True)
