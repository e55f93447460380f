import random

import pytest
from hypothesis import given, settings, strategies as st

from tarski import core
from tarski.axioms import pencil_witness
from tarski.boolean import Clopen
from tarski.cuntz import (
    CuntzModel,
    Germ,
    Point,
    PrefixBijection,
    act,
    compose,
    germ_compose,
    inverse,
    is_unit,
    moved_point_in,
    noncommuting_idempotent,
    phi_raw,
    random_clopen,
    random_element,
    random_unit,
    swap_involution,
    unit_extension,
)
from tarski.errors import ArityMismatch, ComparableWords, GermsNotComposable, PointOutsideDomain

from oracles import fixed_table, table_from_bits

C2 = CuntzModel(2)
seeds = st.integers(0, 2**32 - 1)


def X(text, n=2):
    return PrefixBijection.parse(text, n)


def pt(text):
    return Point.parse(text, 2)


def test_compose_examples():
    assert compose(X("{0->10}"), X("{e->0}")) == X("{e->10}")
    s = X("{0->10, 1->0}")
    assert compose(s, compose(inverse(s), s)) == s
    assert compose(X("{0->1}"), X("{0->1}")) == C2.zero
    with pytest.raises(ArityMismatch):
        compose(X("{0->1}"), X("{0->1}", 3))


def test_inverse_phi_unit_examples():
    assert inverse(X("{0->10}")) == X("{10->0}")
    assert phi_raw(X("{0->00}")).is_zero()
    assert is_unit(X("{0->10, 10->11, 11->0}"))


def test_phi_of_contraction_against_oracle():
    s = X("{0->00}")
    assert not any(fixed_table(s, 6))


def test_swap_involution_examples():
    assert swap_involution((0,), (1,), 2) == X("{0->1, 1->0}")
    assert swap_involution((0, 0), (0, 1), 2) == X("{00->01, 01->00, 1->1}")
    with pytest.raises(ComparableWords):
        swap_involution((0,), (0, 1), 2)


def test_unit_extension_examples():
    g = unit_extension((0,), (0, 0), 2)
    assert is_unit(g) and core.natural_leq(C2, X("{0->00}"), g)
    assert unit_extension((), (), 2) == C2.one
    assert unit_extension((0,), (1,), 2) == swap_involution((0,), (1,), 2)


def test_literals_round_trip():
    for text in ["0", "1", "{00->11, 01->10, 1->0}", "{e->10}"]:
        assert str(X(text)) == text
    s = X("{00->11, 01->10, 1->0}")
    assert PrefixBijection.from_json(s.to_json()) == s
    assert str(X("{e->e}")) == "1"
    assert str(pt("01(10)*")) == "01(10)*"


def test_point_canonical_form():
    assert pt("0(0)*") == pt("(0)*")
    assert pt("(0101)*") == pt("(01)*")
    assert pt("1(01)*") == pt("(10)*")


def test_act_examples():
    y = act(X("{0->10}"), pt("0(1)*"))
    assert y == pt("10(1)*") == pt("101(1)*")
    assert str(y) == "10(1)*"
    x = pt("01(10)*")
    assert act(C2.one, x) == x
    with pytest.raises(PointOutsideDomain):
        act(X("{0->1}"), pt("(1)*"))


def test_germ_examples():
    s, x = X("{0->10}"), pt("0(1)*")
    a = Germ(s, x)
    idem = germ_compose(a.inverse(), a)
    assert idem == Germ(C2.one, x)
    with pytest.raises(GermsNotComposable):
        germ_compose(a, a)
    # germs only see the element near the base
    assert Germ(X("{00->100, 01->101}"), pt("(0)*")) == Germ(X("{0->10}"), pt("(0)*"))


def test_moved_point_examples():
    g = swap_involution((0,), (1,), 2)
    x = moved_point_in(g, Clopen.one(2))
    assert act(g, x) != x
    assert moved_point_in(C2.one, Clopen.one(2)) is None
    h = X("{0->0, 10->11, 11->10}")
    assert moved_point_in(h, Clopen.parse("{0}", 2)) is None


# -- properties --------------------------------------------------------------

@settings(max_examples=300)
@given(seeds)
def test_phi_matches_action_oracle(seed):
    s = random_element(random.Random(seed), max_depth=5)
    k = max([len(u) for u, _ in s.pairs] + [len(v) for _, v in s.pairs] + [1])
    assert phi_raw(s) == Clopen(2, table_from_bits(fixed_table(s, k), 2, k))


@given(seeds)
def test_outputs_are_canonical(seed):
    rng = random.Random(seed)
    a, b, c = (random_element(rng) for _ in range(3))
    for x in (compose(a, b), inverse(a), C2.join_raw([a, C2.zero])):
        assert PrefixBijection(2, x.pairs) == x and x.pairs == tuple(sorted(x.pairs))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(seeds)
def test_act_is_an_action(seed):
    rng = random.Random(seed)
    g, h = random_unit(rng), random_unit(rng)
    x = Point(2, tuple(rng.randrange(2) for _ in range(rng.randrange(5))), (rng.randrange(2), 1))
    assert act(compose(g, h), x) == act(g, act(h, x))
    assert act(inverse(g), act(g, x)) == x


@given(seeds)
def test_unit_extension_always_above(seed):
    rng = random.Random(seed)
    u = tuple(rng.randrange(2) for _ in range(rng.randint(1, 5)))
    v = tuple(rng.randrange(2) for _ in range(rng.randint(1, 5)))
    g = unit_extension(u, v, 2)
    assert is_unit(g) and core.natural_leq(C2, PrefixBijection(2, [(u, v)]), g)


@settings(max_examples=50)
@given(seeds)
def test_simplicity_evidence(seed):
    rng = random.Random(seed)
    s = random_element(rng)
    if not C2.is_idempotent(s):
        e = noncommuting_idempotent(s, depth=6)
        assert e is not None and C2.mul(s, e) != C2.mul(e, s)
    e, f = random_clopen(rng), random_clopen(rng)
    assert pencil_witness(C2, e, f).verify(C2)
