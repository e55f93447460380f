import random

import pytest
from hypothesis import given, settings, strategies as st

from tarski import core
from tarski.axioms import (
    alt_generators,
    f1_witness,
    f2_witness,
    f3_witness,
    germ_unit,
    germ_unit_factors,
    is_involution,
    pencil_witness,
    piecewise_factorize,
    sym_generators,
)
from tarski.boolean import Clopen, FiniteSet
from tarski.cuntz import (
    CuntzModel,
    Germ,
    Point,
    PrefixBijection,
    act,
    random_clopen,
    random_element,
    random_involution,
    swap_involution,
    unit_extension,
)
from tarski.errors import AtomObstruction, NotAnInvolution, NotBelowSupport, ZeroClopen, ZeroElement
from tarski.symmetric import PartialPerm, SymmetricModel

C2, I3, I4 = CuntzModel(2), SymmetricModel(3), SymmetricModel(4)
seeds = st.integers(0, 2**32 - 1)


def C(text):
    return Clopen.parse(text, 2)


def X(text):
    return PrefixBijection.parse(text, 2)


def pt(text):
    return Point.parse(text, 2)


def join_supports(m, ts):
    out = core.sigma_raw(m, ts[0])
    for t in ts[1:]:
        out = out.union(core.sigma_raw(m, t))
    return out


def test_f1_examples():
    assert f1_witness(C2, C("{e}")) == [swap_involution((0,), (1,), 2)]
    assert f1_witness(C2, C("{0}")) == [swap_involution((0, 0), (0, 1), 2)]
    with pytest.raises(AtomObstruction):
        f1_witness(I3, FiniteSet(3, [0]))
    with pytest.raises(ZeroClopen):
        f1_witness(C2, C("{}"))


def test_f1_odd_number_of_pieces():
    ts = f1_witness(C2, C("{00, 01, 10}"))
    assert join_supports(C2, ts) == C("{00, 01, 10}")
    assert f1_witness(I3, FiniteSet(3, [0, 1, 2]))


def test_f2_examples():
    t = swap_involution((0,), (1,), 2)
    g, f = f2_witness(C2, t, C("{0}"))
    assert f == C("{0}") and g == t
    assert core.sigma_raw(C2, g) == core.extent_raw(C2, C2.mul(t, C2.embed(C("{0}"))))
    with pytest.raises(NotBelowSupport):
        f2_witness(C2, swap_involution((0, 0), (0, 1), 2), C("{1}"))
    with pytest.raises(NotAnInvolution):
        f2_witness(C2, C2.one, C("{0}"))


def test_f3_examples():
    w = f3_witness(C2, C("{e}"))
    assert (w.a, w.b) == (X("{00->01}"), X("{01->1}"))
    assert core.power(C2, w.g, 3) == C2.one and core.sigma_raw(C2, w.g).is_one()
    w = f3_witness(C2, C("{0}"))
    assert core.sigma_raw(C2, w.g).leq(C("{0}"))
    with pytest.raises(AtomObstruction):
        f3_witness(I3, FiniteSet(3, [0, 1]))
    assert f3_witness(I3, FiniteSet(3, [0, 1, 2])).g == PartialPerm.from_cycles(3, (0, 1, 2))


def test_factorize_examples():
    s = X("{0->00}")
    fac = piecewise_factorize(C2, s)
    assert fac.pieces == ((unit_extension((0,), (0, 0), 2), C2.embed(C("{0}"))),)
    assert fac.join(C2) == s
    g = swap_involution((0,), (1,), 2)
    assert piecewise_factorize(C2, g).pieces == ((g, C2.one),)
    e = C2.embed(C("{01}"))
    assert piecewise_factorize(C2, e).pieces == ((C2.one, e),)
    with pytest.raises(ZeroElement):
        piecewise_factorize(C2, C2.zero)


def test_factorize_whole_space_pair():
    for text in ["{e->0}", "{00->e}"]:
        s = X(text)
        assert piecewise_factorize(C2, s).join(C2) == s


def test_factorize_strategies_agree_on_i4():
    for s in I4.enumerate_all():
        if core.is_zero(I4, s):
            continue
        for strategy in ("default", "reversed", "atomwise"):
            fac = piecewise_factorize(I4, s, strategy)
            assert fac.join(I4) == s
            assert all(core.is_unit(I4, g) for g, _ in fac.pieces)


def test_germ_unit_examples():
    x = pt("01(1)*")
    assert germ_unit(Germ(C2.one, x)) == C2.one
    y = pt("(0)*")
    assert germ_unit(Germ(X("{0->1}"), y)) == swap_involution((0,), (1,), 2)
    g = germ_unit(Germ(X("{0->00}"), x))
    assert act(g, x) == act(unit_extension((0,), (0, 0), 2), x) == act(X("{0->00}"), x)
    assert len(germ_unit_factors(Germ(X("{0->00}"), x))) <= 2


def test_germ_unit_at_fixed_point_uses_two_involutions():
    x = pt("(0)*")
    factors = germ_unit_factors(Germ(X("{0->00}"), x))
    assert len(factors) == 2 and all(is_involution(C2, t) for t in factors)
    assert Germ(germ_unit(Germ(X("{0->00}"), x)), x) == Germ(X("{0->00}"), x)


def test_generators():
    assert len(sym_generators(I3)) == 3
    assert all(len(core.sigma_raw(I3, t)) == 2 for t in sym_generators(I3))
    assert sym_generators(C2, 1) == [swap_involution((0,), (1,), 2)]
    depth2 = sym_generators(C2, 2)
    words = [(0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    expected = {
        swap_involution(u, v, 2)
        for i, u in enumerate(words)
        for v in words[i + 1:]
        if u[: len(v)] != v and v[: len(u)] != u
    }
    assert set(depth2) == expected and len(depth2) == len(expected)
    assert len(alt_generators(I3)) == 2
    assert all(core.power(C2, g, 3) == C2.one for g in alt_generators(C2, 2))


def test_pencil_witness_i3():
    w = pencil_witness(I3, FiniteSet(3, [0, 1]), FiniteSet(3, [2]))
    assert w.verify(I3) and len(w.elements) == 2


# -- properties --------------------------------------------------------------

@settings(max_examples=200)
@given(seeds)
def test_f1_property(seed):
    e = random_clopen(random.Random(seed))
    ts = f1_witness(C2, e)
    assert join_supports(C2, ts) == e
    assert all(is_involution(C2, t) for t in ts)


@settings(max_examples=200)
@given(seeds)
def test_f2_property(seed):
    rng = random.Random(seed)
    t = random_involution(rng)
    supp = core.sigma_raw(C2, t)
    word = supp.words[rng.randrange(len(supp.words))]
    e = Clopen.cylinder(2, word + tuple(rng.randrange(2) for _ in range(rng.randrange(3))))
    g, f = f2_witness(C2, t, e)
    sg = core.sigma_raw(C2, g)
    assert sg.leq(core.extent_raw(C2, C2.mul(t, C2.embed(e))))
    assert sg.leq(C2.phi_raw(C2.mul(t, g)))
    assert f.leq(e) and f.disjoint(C2.extract(core.conjugate(C2, t, C2.embed(f))))


@settings(max_examples=200)
@given(seeds)
def test_f3_property(seed):
    e = random_clopen(random.Random(seed))
    w = f3_witness(C2, e)
    assert core.power(C2, w.g, 3) == C2.one and w.g != C2.one
    assert core.sigma_raw(C2, w.g).leq(e)
    assert core.dom(C2, w.b) == core.ran(C2, w.a)
    ba = C2.mul(w.b, w.a)
    assert C2.mul(ba, ba) == C2.zero


@given(seeds)
def test_factorization_round_trip_c2(seed):
    s = random_element(random.Random(seed))
    if core.is_zero(C2, s):
        return
    for strategy in ("default", "refined"):
        fac = piecewise_factorize(C2, s, strategy)
        assert fac.join(C2) == s
        assert all(core.is_unit(C2, g) for g, _ in fac.pieces)


def test_germ_unit_onto_whole_space_at_fixed_point():
    x = pt("(0)*")
    a = Germ(X("{0->e}"), x)
    g = germ_unit(a)
    assert Germ(g, x) == a and len(germ_unit_factors(a)) == 2


@given(seeds)
def test_germ_unit_reproduces_germ(seed):
    rng = random.Random(seed)
    s = random_element(rng)
    if not s.pairs:
        return
    u, _ = s.pairs[rng.randrange(len(s.pairs))]
    x = Point(2, u + tuple(rng.randrange(2) for _ in range(rng.randrange(4))),
              tuple(rng.randrange(2) for _ in range(rng.randint(1, 3))))
    a = Germ(s, x)
    g = germ_unit(a)
    assert act(g, x) == act(s, x) and Germ(g, x) == a
    assert len(germ_unit_factors(a)) <= 2
