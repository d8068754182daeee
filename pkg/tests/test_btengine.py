from __future__ import annotations

import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tensor_rep import apply_combination, basis, combinations_equal
from tiedlinks.braidword import cyclic_rotate, parse_braid, random_braid, skein_variants
from tiedlinks.btengine import (
    FUSION,
    REDUCTION_TABLE,
    AlgebraElement,
    AlgebraLetter,
    ContractionError,
    Rewriter,
    RewriteLimitError,
    TPower,
    contract,
    format_word,
    markov_trace,
    parse_word,
    power_coefficient,
    reduce_word,
    represent,
    simplify_word,
)
from tiedlinks.polyfield import A, B, LaurentU, TracePoly, U

KIND = ("T", "E", "ET")


def _combo(element: AlgebraElement):
    """Element -> oracle combination with exact coefficient functions."""
    return [(lambda u, c=c: c.evaluate(u), [(x.index, x.kind) for x in w])
            for w, c in element.addends()]


def _word(letters):
    return [(x.index, x.kind) for x in letters]


# -- tables checked against the tensor representation -----------------------


@pytest.mark.parametrize("key", sorted(REDUCTION_TABLE))
def test_table_row_holds_in_representation(key):
    i = 2
    lhs = [(i, KIND[key[0]]), (i - 1, KIND[key[1]]), (i, KIND[key[2]])]
    rhs = [(lambda u, c=c: c.evaluate(u), [(i + off, KIND[k]) for off, k in word])
           for word, c in REDUCTION_TABLE[key]]
    assert combinations_equal([(1, lhs)], rhs, strands=3)


def test_table_has_all_27_kind_triples():
    assert len(REDUCTION_TABLE) == 27
    assert set(REDUCTION_TABLE) == {(a, b, c) for a in range(3) for b in range(3) for c in range(3)}


def test_table_row_for_e_t_t_ends_with_lower_tie():
    # T_{i-1} T_i E_{i-1}; ending in E_i instead would be false
    (word, c), = REDUCTION_TABLE[(1, 0, 0)]
    assert word == ((-1, 0), (0, 0), (-1, 1))
    assert c == 1
    wrong = [(1, [(1, "T"), (2, "T"), (2, "E")])]
    assert not combinations_equal([(1, [(2, "E"), (1, "T"), (2, "T")])], wrong, strands=3)


@pytest.mark.parametrize("pair", sorted(FUSION))
def test_fusion_holds_in_representation(pair):
    lhs = [(1, KIND[pair[0]]), (1, KIND[pair[1]])]
    rhs = [(lambda u, c=c: c.evaluate(u), [] if k is None else [(1, KIND[k])])
           for k, c in FUSION[pair]]
    assert combinations_equal([(1, lhs)], rhs, strands=2)


@pytest.mark.parametrize("e", [k for k in range(-6, 7) if k])
def test_power_expansion_matches_representation(e):
    expanded = _combo(simplify_word([TPower(1, e)]))
    if e > 0:
        assert combinations_equal([(1, [(1, "T")] * e)], expanded, strands=2)
    else:
        # T^|e| times the expansion of T^e is the identity
        prod = [(f, [(1, "T")] * (-e) + w) for f, w in expanded]
        assert combinations_equal(prod, [(1, [])], strands=2)


def test_power_coefficient_closed_forms():
    for e in range(-7, 8):
        c = power_coefficient(e)
        for u0 in (Fraction(3), Fraction(-2, 5)):
            target = (u0**e - (1 if e % 2 == 0 else u0)) / (u0 + 1)
            assert c.evaluate(u0) == target


# -- documented examples ----------------------------------------------------


def test_represent_examples():
    assert represent(parse_braid("e1")) == AlgebraElement.from_words([(parse_word("E1"), LaurentU.const(1))])
    c = LaurentU({-1: 1, 0: -1})
    assert represent(parse_braid("s1^-1")) == AlgebraElement.from_words(
        [(parse_word("T1"), LaurentU.const(1)), (parse_word("E1"), c), (parse_word("ET1"), c)])
    assert represent(parse_braid("s1^2")) == AlgebraElement.from_words(
        [((), LaurentU.const(1)), (parse_word("E1"), U - 1), (parse_word("ET1"), U - 1)])


def test_simplify_examples():
    assert simplify_word("E1 E1 E1") == AlgebraElement.from_words([(parse_word("E1"), 1)])
    assert simplify_word([TPower(1, 1), TPower(1, -1)]) == AlgebraElement.from_words([((), 1)])
    assert simplify_word("ET1 ET1") == AlgebraElement.from_words(
        [(parse_word("E1"), U), (parse_word("ET1"), U - 1)])


def test_reduce_examples():
    assert reduce_word("E2 E1 E2") == AlgebraElement.from_words([(parse_word("E1 E2"), 1)])
    assert reduce_word("T2 E1 T2") == AlgebraElement.from_words([
        (parse_word("T1 E2 T1"), 1),
        (parse_word("E2 ET1"), 1 - U),
        (parse_word("ET2 E1"), U - 1),
    ])
    assert reduce_word("T2 E1 ET2") == AlgebraElement.from_words(
        [(parse_word("E1 E2"), U), (parse_word("E1 ET2"), U - 1)])


def test_reduce_rejects_non_simple_words():
    with pytest.raises(ValueError):
        reduce_word("T1 E1")


def test_contract_examples():
    one = LaurentU.const(1)
    e = AlgebraElement.from_words([(parse_word("T1 E2 ET1"), one)])
    assert contract(e, 2) == AlgebraElement.from_words(
        [(parse_word("E1"), B * U), (parse_word("ET1"), B * (U - 1))])
    e = AlgebraElement.from_words([(parse_word("E1 T2"), one), (parse_word("E1 ET2 E1"), one), (parse_word("T1"), one)])
    assert contract(e, 2) == AlgebraElement.from_words(
        [(parse_word("E1"), A + A), (parse_word("T1"), TracePoly.const(1))])


def test_contract_precondition():
    e = AlgebraElement.from_words([(parse_word("T2 E1 T2"), LaurentU.const(1))])
    with pytest.raises(ContractionError):
        contract(e, 2)


def test_golden_traces():
    assert markov_trace(parse_braid("s1^2")) == 1 + (U - 1) * B + (U - 1) * A
    assert markov_trace(parse_braid("")) == 1
    assert markov_trace(parse_braid("", 4)) == 1
    assert markov_trace(parse_braid("s1 s2 s3")) == A**3


def test_word_format_round_trip():
    w = parse_word("T2 E1 ET3")
    assert format_word(w) == "T2 E1 ET3"
    assert format_word(()) == "1"
    with pytest.raises(ValueError):
        parse_word("X1")


def test_step_budget_is_enforced():
    rw = Rewriter(max_steps=3)
    with pytest.raises(RewriteLimitError):
        rw.markov_trace(parse_braid("s1 s2^-1 s1 s2^-1 s3 s2 s1 s3^-1"))


def test_debug_log_lines(caplog):
    with caplog.at_level(logging.DEBUG, logger="tiedlinks.btengine"):
        Rewriter().markov_trace(parse_braid("s2 e1 s2"))
    lines = [r.getMessage() for r in caplog.records]
    assert any(line.startswith("RULE TABLE T,E,T: T2 E1 T2 -> ") for line in lines)
    assert all(line.startswith("RULE ") for line in lines)


# -- properties ---------------------------------------------------------------


@st.composite
def simple_words(draw, max_n=4, max_len=8):
    n = draw(st.integers(2, max_n))
    length = draw(st.integers(0, 1 if n == 2 else max_len))
    w: list[AlgebraLetter] = []
    for _ in range(length):
        choices = [i for i in range(1, n) if not w or w[-1].index != i]
        w.append(AlgebraLetter(draw(st.sampled_from(choices)), draw(st.sampled_from(KIND))))
    return n, w


@settings(max_examples=60, deadline=None)
@given(simple_words())
def test_reduce_word_is_an_identity_in_representation(nw):
    n, w = nw
    out = reduce_word(w)
    for word, _ in out.addends():
        top = max((x.index for x in word), default=0)
        assert sum(1 for x in word if x.index == top) <= 1
        assert all(word[k].index != word[k + 1].index for k in range(len(word) - 1))
    assert combinations_equal([(1, _word(w))], _combo(out), strands=n, colors=2, levels=2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 8), st.integers(0, 10**6))
def test_represent_is_an_identity_in_representation(n, length, seed):
    b = random_braid(n, length, seed)
    # the oracle has no inverse: negative powers go in through their expansion
    factors = []
    for x in b.letters:
        if x.is_eta:
            factors.append([(1, [(x.index, "E")])])
        elif x.power > 0:
            factors.append([(1, [(x.index, "T")] * x.power)])
        else:
            factors.append(_combo(simplify_word([TPower(x.index, x.power)])))
    image = _combo(represent(b))
    for u in (Fraction(7, 3), Fraction(-5, 2)):
        for state in basis(n, 2, 2):
            vec = {state: Fraction(1)}
            for factor in reversed(factors):
                vec = apply_combination(factor, vec, u)
            assert vec == apply_combination(image, {state: Fraction(1)}, u)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 10), st.integers(0, 10**6), st.integers(0, 100))
def test_trace_is_rotation_invariant(n, length, seed, k):
    b = random_braid(n, length, seed)
    assert markov_trace(b) == markov_trace(cyclic_rotate(b, k))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 10), st.integers(0, 10**6), st.data())
def test_preskein_identity(n, length, seed, data):
    b = random_braid(n, length, seed)
    sites = [k for k, x in enumerate(b.letters) if x.is_sigma]
    if not sites:
        return
    plus, minus, tied, plus_tied = skein_variants(b, data.draw(st.sampled_from(sites)))
    c = 1 - LaurentU({-1: 1})
    lhs = markov_trace(plus) - markov_trace(minus)
    assert lhs == markov_trace(tied) * c + markov_trace(plus_tied) * c


def test_rewriter_cache_does_not_change_results():
    b = random_braid(5, 12, 99)
    assert Rewriter().markov_trace(b) == markov_trace(b) == markov_trace(b)
