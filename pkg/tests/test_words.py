"""Presentation parsing and the bounded word problem."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from natext.words import (
    GeneratorSet,
    TriState,
    free_reduce,
    parse_presentation,
    signed_invert,
    word_to_signed,
    words_equal_bounded,
)


def test_parse_and_format():
    p = parse_presentation("gens: a b; rels: a b = b b a;")
    assert p.gens.names == ("a", "b")
    assert p.relations == (((0, 1), (1, 1, 0)),)
    assert p.format() == "gens: a b; rels: a b = b b a;"
    q = parse_presentation(p.format())
    assert q == p


def test_parse_no_relations():
    p = parse_presentation("gens: x y z;")
    assert p.n_gens == 3
    assert p.relations == ()


def test_token_split_longest_prefix():
    # 'ab' is its own generator and wins the greedy longest-prefix match
    g = GeneratorSet(("ab", "a", "b"))
    assert g.split_token("aba") == [0, 1]  # ab a
    assert g.split_token("abb") == [0, 2]  # ab b
    assert g.split_token("ba") == [2, 1]
    p = parse_presentation("gens: ab a; rels: abab = a;")
    assert p.relations == (((0, 0), (1,)),)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_presentation("rels: a = b;")
    with pytest.raises(ValueError):
        parse_presentation("gens: a b; rels: a c = b;")
    with pytest.raises(ValueError):
        parse_presentation("gens: a a;")


def test_signed_helpers():
    w = word_to_signed((0, 1, 0))
    assert w == ((0, 1), (1, 1), (0, 1))
    assert signed_invert(w) == ((0, -1), (1, -1), (0, -1))
    assert free_reduce(w + signed_invert(w)) == ()


@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([-1, 1])), max_size=12))
@settings(max_examples=200, deadline=None)
def test_free_reduce_idempotent_and_reduced(sw):
    r = free_reduce(tuple(sw))
    assert free_reduce(r) == r
    for (g1, e1), (g2, e2) in zip(r, r[1:]):
        assert not (g1 == g2 and e1 == -e2)


def test_equal_by_rewriting():
    p = parse_presentation("gens: a b; rels: a b = b b a;")
    tri = words_equal_bounded(p, (0, 1), (1, 1, 0))
    assert tri is TriState.EQUAL
    # apply the relation inside a longer word: a(ab)b -> a(bba)b
    tri = words_equal_bounded(p, (0, 0, 1, 1), (0, 1, 1, 0, 1))
    assert tri is TriState.EQUAL


def test_not_equal_free():
    p = parse_presentation("gens: a b;")
    assert words_equal_bounded(p, (0,), (1,)) is TriState.NOT_EQUAL
    assert words_equal_bounded(p, (0, 1), (1, 0)) is TriState.NOT_EQUAL
    assert words_equal_bounded(p, (0,), (0,)) is TriState.EQUAL


def test_not_equal_by_abelianization():
    # letter counts are invariant mod the relation lattice
    p = parse_presentation("gens: a b; rels: a b = b a;")
    assert words_equal_bounded(p, (0,), (0, 0)) is TriState.NOT_EQUAL
    assert words_equal_bounded(p, (0, 1), (1, 0)) is TriState.EQUAL


def test_unknown_when_budget_tiny():
    p = parse_presentation("gens: a b; rels: a b a = b a b;")
    u, v = (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 1, 1)
    # same letter counts, so abelianization cannot separate them, and a
    # one-node search cannot close either equivalence class
    assert words_equal_bounded(p, u, v, budget=1) is TriState.UNKNOWN
    # the full search settles it
    assert words_equal_bounded(p, u, v) is TriState.NOT_EQUAL


def test_relation_invariance_property():
    # rewriting with the relation anywhere preserves equality verdicts
    p = parse_presentation("gens: a b; rels: a b = b b a;")
    base = (0, 1, 0, 1)
    rewritten = (1, 1, 0, 0, 1)  # substitute at position 0
    assert words_equal_bounded(p, base, rewritten) is TriState.EQUAL


def test_words_equal_realization_shortcut():
    # a faithful model decides instantly what rewriting also confirms
    from natext.groups import eta_apply, sgroup_bs

    sg = sgroup_bs(1, 2)  # presented a b = b b a, exact affine model
    p = sg.presentation
    assert p.relations

    class Model:
        def eval(self, w):
            return eta_apply(sg, w).payload

    assert words_equal_bounded(p, (0, 1), (1, 1, 0),
                               realization=Model()) is TriState.EQUAL
    assert words_equal_bounded(p, (0,), (1,),
                               realization=Model()) is TriState.NOT_EQUAL
