import pytest
from hypothesis import given, strategies as st

from tarski.boolean import Clopen, FiniteSet, ProductSet, canonical_words, equalize, parse_word
from tarski.errors import ArityMismatch, AtomObstruction, IncompatibleCounts, InvalidLetter, ZeroClopen

from oracles import truth_table


def C(text, n=2):
    return Clopen.parse(text, n)


def words(n=2, max_len=6):
    return st.lists(st.integers(0, n - 1), max_size=max_len).map(tuple)


def clopens(n=2, max_len=6, max_words=5):
    return st.lists(words(n, max_len), max_size=max_words).map(lambda ws: Clopen(n, ws))


@pytest.mark.parametrize(
    "given_words, expected",
    [([(0,), (1,)], "{e}"), ([(0,), (0, 1)], "{0}"), ([(0, 0), (0, 1)], "{0}")],
)
def test_canonicalize_examples(given_words, expected):
    assert str(Clopen(2, given_words)) == expected


def test_invalid_letter():
    with pytest.raises(InvalidLetter):
        Clopen(2, [(0, 2)])
    with pytest.raises(InvalidLetter):
        parse_word("3", 3)


def test_basic_operations():
    assert C("{0}").complement() == C("{1}")
    assert C("{0}").intersect(C("{01}")) == C("{01}")
    assert C("{00}").leq(C("{0}"))
    assert not C("{0}").leq(C("{00}"))
    assert C("{}").is_zero() and C("{e}").is_one()


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        C("{0}").union(Clopen.parse("{0}", 3))


def test_split_examples():
    assert C("{e}").split() == (C("{0}"), C("{1}"))
    assert C("{0}").split() == (C("{00}"), C("{01}"))
    with pytest.raises(ZeroClopen):
        C("{}").split()


def test_equalize_examples():
    # the literal {10, 11} would reduce to {1}; pass the raw antichain instead
    xs, ys = equalize(C("{0}"), [(1, 0), (1, 1)])
    assert (xs, ys) == ([(0, 0), (0, 1)], [(1, 0), (1, 1)])
    assert Clopen(2, xs) == C("{0}") and Clopen(2, ys) == C("{1}")
    assert equalize(C("{0}"), C("{1}")) == ([(0,)], [(1,)])
    with pytest.raises(ZeroClopen):
        equalize(C("{}"), C("{1}"))


def test_equalize_counts_mod_arity():
    # ternary: one cylinder against two can never balance
    with pytest.raises(IncompatibleCounts):
        equalize(Clopen.parse("{0}", 3), Clopen.parse("{1, 2}", 3))
    xs, ys = equalize(Clopen.parse("{0}", 3), Clopen.parse("{1, 20, 21}", 3))
    assert len(xs) == len(ys) == 3


def test_text_and_json_round_trip():
    e = C("{01, 10}")
    assert C(str(e)) == e
    assert Clopen.from_json(e.to_json()) == e
    assert e.to_json() == {"arity": 2, "words": ["01", "10"]}
    assert str(C("{ε}")) == "{e}"


def test_finite_set_algebra():
    a, b = FiniteSet(4, [0, 1]), FiniteSet(4, [1, 2])
    assert a.union(b) == FiniteSet(4, [0, 1, 2])
    assert a.intersect(b) == FiniteSet(4, [1])
    assert a.complement() == FiniteSet(4, [2, 3])
    assert FiniteSet(4, [1]).leq(a)
    with pytest.raises(AtomObstruction):
        FiniteSet(4, [3]).split()
    assert FiniteSet.parse(str(a), 4) == a


def test_product_set_componentwise():
    x = ProductSet(FiniteSet(2, [0]), FiniteSet(2, []))
    y = ProductSet(FiniteSet(2, [1]), FiniteSet(2, [1]))
    assert x.union(y) == ProductSet(FiniteSet(2, [0, 1]), FiniteSet(2, [1]))
    assert x.disjoint(y)
    assert len(x.union(y).basic_parts()) == 3


# -- properties --------------------------------------------------------------

@given(st.lists(words(), max_size=6))
def test_canonicalize_idempotent(ws):
    once = canonical_words(2, ws)
    assert canonical_words(2, once) == once
    assert truth_table(once, 2, 6) == truth_table(ws, 2, 6)


@given(clopens(), clopens(), clopens())
def test_boolean_laws(a, b, c):
    assert a.union(b) == b.union(a)
    assert a.intersect(b) == b.intersect(a)
    assert a.union(b.union(c)) == a.union(b).union(c)
    assert a.intersect(b.union(c)) == a.intersect(b).union(a.intersect(c))
    assert a.union(b).complement() == a.complement().intersect(b.complement())
    assert a.complement().complement() == a


@given(clopens(), clopens())
def test_outputs_canonical(a, b):
    for x in (a.union(b), a.intersect(b), a.complement(), a.minus(b)):
        assert x.words == canonical_words(2, x.words)


@given(clopens(), clopens())
def test_leq_matches_prefix_containment(a, b):
    direct = all(any(v == u[: len(v)] for v in b.words) for u in a.words)
    assert a.leq(b) == direct


@given(clopens().filter(lambda e: not e.is_zero()))
def test_split_is_atomless_witness(e):
    left, right = e.split()
    assert not left.is_zero() and not right.is_zero()
    assert left.disjoint(right) and left.union(right) == e


@given(clopens(n=3, max_len=4).filter(lambda e: not e.is_zero()))
def test_split_ternary(e):
    left, right = e.split()
    assert left.union(right) == e and left.disjoint(right)


@given(clopens().filter(bool), clopens().filter(bool))
def test_equalize_decompositions(a, b):
    xs, ys = equalize(a, b)
    assert len(xs) == len(ys)
    assert Clopen(2, xs) == a and Clopen(2, ys) == b
