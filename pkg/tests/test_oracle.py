import pytest

from autocomplexity import (
    KIND_COND_EXACT,
    KIND_COND_UNIQUE,
    KIND_DET_PARTIAL,
    KIND_EXACT,
    KIND_UNIQUE,
    ComplexityQuery,
    Nfa,
    compute,
    count_walks_given_projection,
    count_words_given_projection,
    oracle_min_states,
)
from autocomplexity.words import Word, slow_words


def test_oracle_guards():
    with pytest.raises(ValueError):
        oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word.parse("0", 2)), 4)
    with pytest.raises(ValueError):
        oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word(tuple([0] * 9), 2)))
    with pytest.raises(ValueError):
        oracle_min_states(ComplexityQuery(KIND_DET_PARTIAL, Word.parse("0", 2)))
    with pytest.raises(ValueError):
        oracle_min_states(
            ComplexityQuery(KIND_COND_UNIQUE, Word.parse("012", 3), Word.parse("012", 3))
        )


def test_oracle_examples():
    assert oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word.parse("0101", 2))) == 2
    assert oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word.parse("0", 2))) == 1
    assert oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word.parse("", 2))) == 1
    # exact acceptance never needs more states than unique acceptance
    w = Word.parse("00", 1)
    assert (
        oracle_min_states(ComplexityQuery(KIND_EXACT, w))
        <= oracle_min_states(ComplexityQuery(KIND_UNIQUE, w))
    )
    # a word needing more than three states resolves to None
    assert oracle_min_states(ComplexityQuery(KIND_UNIQUE, Word.parse("0001000", 2))) is None


def agreement(kind, x, y=None):
    o = oracle_min_states(ComplexityQuery(kind, x, y), 3)
    c = compute(ComplexityQuery(kind, x, y)).value
    if c <= 3:
        return o == c
    return o is None


def test_oracle_matches_search_unconditional():
    for n in range(0, 7):
        for w in slow_words(n, 2):
            assert agreement(KIND_UNIQUE, w), str(w)
            assert agreement(KIND_EXACT, w), str(w)


def test_oracle_matches_search_conditional_small():
    for n in range(0, 5):
        for x in slow_words(n, 2):
            for y in slow_words(n, 2):
                assert agreement(KIND_COND_UNIQUE, x, y), (str(x), str(y))
                assert agreement(KIND_COND_EXACT, x, y), (str(x), str(y))


def raw_min_states(kind, x, y, max_q):
    """Third route: literally every labeled NFA over the pair alphabet, every
    edge subset and accept set, checked straight off the counting operations.
    Exponential in q*|alphabet|*q, so only run with q <= 2."""
    for q in range(1, max_q + 1):
        all_edges = [
            (frm, label, to)
            for frm in range(q)
            for label in range(4)
            for to in range(q)
        ]
        for bits in range(1 << len(all_edges)):
            edges = frozenset(e for i, e in enumerate(all_edges) if bits >> i & 1)
            for acc_bits in range(1, 1 << q):
                accepts = frozenset(s for s in range(q) if acc_bits >> s & 1)
                m = Nfa(q, 0, accepts, edges, 4)
                if kind == KIND_COND_UNIQUE:
                    r = count_walks_given_projection(m, y)
                else:
                    r = count_words_given_projection(m, y)
                if r.count == 1 and r.reconstruction == x:
                    return q
    return None


def test_oracle_matches_raw_enumeration_two_states():
    for x in slow_words(3, 2):
        for y in slow_words(3, 2):
            for kind in (KIND_COND_UNIQUE, KIND_COND_EXACT):
                raw = raw_min_states(kind, x, y, 2)
                fast = oracle_min_states(ComplexityQuery(kind, x, y), 2)
                assert raw == fast, (kind, str(x), str(y), raw, fast)
