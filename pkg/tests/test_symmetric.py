from itertools import permutations

import numpy as np
import pytest

from tarski import core
from tarski.boolean import FiniteSet, ProductSet
from tarski.errors import NotInjective, ZeroIdempotent
from tarski.symmetric import (
    Arrow,
    IdempotentModel,
    LocalModel,
    PartialPerm,
    ProductModel,
    SymmetricModel,
    Ultrafilter,
    act_on_ultrafilter,
    compose_arrows,
    element_index,
    germ_groupoid,
    is_fundamental,
    is_zero_simplifying,
    moved_atoms,
    moved_idempotent_below,
    multiplication_table,
    orthogonal_conjugate_witness,
    orthogonal_triple_witness,
    pencil_exists,
    structure_space,
    zero_simplifying_report,
)

from oracles import symmetric_size

I2, I3, I4 = SymmetricModel(2), SymmetricModel(3), SymmetricModel(4)


def P(text, n=3):
    return PartialPerm.parse(text, n)


def S(n, *xs):
    return FiniteSet(n, xs)


def test_model_examples():
    assert I3.mul(P("[0:1]"), P("[1:0]")) == P("[1:1]")
    assert I3.phi_raw(PartialPerm.from_cycles(3, (0, 1))) == S(3, 2)
    for n in range(1, 6):
        assert sum(1 for _ in SymmetricModel(n).enumerate_all()) == symmetric_size(n)
    assert symmetric_size(3) == 34 and symmetric_size(4) == 209 and symmetric_size(5) == 1546


def test_literals():
    s = P("[0:1, 2:2]")
    assert str(s) == "[0:1, 2:2]" and P(str(s)) == s
    assert s.to_json() == {"n": 3, "pairs": [[0, 1], [2, 2]]}
    with pytest.raises(NotInjective):
        P("[0:1, 2:1]")


def test_cycles_round_trip():
    for images in permutations(range(4)):
        g = PartialPerm(4, images)
        assert PartialPerm.from_cycles(4, *g.cycles()) == g


def test_pencil_examples():
    assert pencil_exists(I3, S(3, 0, 1), S(3, 2)) == [P("[0:2]"), P("[1:2]")]
    assert pencil_exists(I3, S(3, 0), S(3, 0, 1)) == [P("[0:0]")]
    prod = ProductModel(I2, I2)
    e = ProductSet(S(2, 0, 1), S(2))
    f = ProductSet(S(2), S(2, 0, 1))
    assert pencil_exists(prod, e, f) is None
    with pytest.raises(ZeroIdempotent):
        pencil_exists(I3, S(3), S(3, 0))


def test_simplicity_checkers():
    for m in (I3, I4):
        assert is_fundamental(m) and is_zero_simplifying(m)
    prod = ProductModel(I2, I2)
    rep = zero_simplifying_report(prod)
    assert not rep.holds
    e, f = rep.failing_pair
    # the witnessed ideal is proper and does not reach the other factor
    assert prod.one not in rep.ideal and e not in rep.ideal
    assert is_fundamental(IdempotentModel(I3))


def test_duality_examples():
    assert len(structure_space(I3)) == 3
    arrows, table = germ_groupoid(I3)
    assert len(arrows) == 9
    assert compose_arrows(Arrow(1, 2), Arrow(0, 1)) == Arrow(0, 2)
    assert compose_arrows(Arrow(0, 1), Arrow(0, 1)) is None
    identities = [a for a in arrows if a.source == a.target]
    assert [a.element(3) for a in identities] == [P("[0:0]"), P("[1:1]"), P("[2:2]")]
    g = PartialPerm.from_cycles(3, (0, 1, 2))
    assert act_on_ultrafilter(g, Ultrafilter(3, 0)) == Ultrafilter(3, 1)


def test_product_model_examples():
    prod = ProductModel(I2, I2)
    elems = list(prod.enumerate_all())
    assert len(elems) == 49
    s, t, u = P("[0:1]", 2), P("[1:0]", 2), P("[0:0]", 2)
    assert prod.mul((s, I2.zero), (t, u)) == (I2.mul(s, t), I2.zero)
    assert len(list(prod.enumerate_units())) == 4


def test_local_monoids_fundamental():
    for n in (2, 3, 4):
        m = SymmetricModel(n)
        for e in m.enumerate_idempotents():
            if not core.is_zero(m, e):
                assert is_fundamental(LocalModel(m, e))


def test_moved_pieces_and_supports():
    for n in (2, 3, 4):
        m = SymmetricModel(n)
        for g in m.enumerate_units():
            if g == m.one:
                continue
            f = orthogonal_conjugate_witness(m, g)
            assert f is not None and core.is_zero(m, m.mul(f, core.conjugate(m, g, f)))
            sig = core.sigma_raw(m, g)
            assert sig == moved_atoms(g)
            for e in m.enumerate_idempotents():
                if not core.is_zero(m, e) and m.extract(e).leq(sig):
                    assert moved_idempotent_below(m, g, e) is not None


def test_orthogonal_triples():
    for n in (4, 5):
        m = SymmetricModel(n)
        units = list(m.enumerate_units())
        for atom in range(n):
            F = Ultrafilter(n, atom)
            for g in units:
                for h in units:
                    images = {F.atom, g(atom), h(atom)}
                    if len(images) == 3:
                        e = orthogonal_triple_witness(m, F, g, h)
                        assert e is not None


def test_factorizable():
    for n in (2, 3, 4):
        m = SymmetricModel(n)
        for s in m.enumerate_all():
            assert core.natural_leq(m, s, m.extend_to_unit(s))


def test_multiplication_table_matches_compose():
    elems, index = element_index(3)
    table = multiplication_table(3)
    for i, s in enumerate(elems):
        for j, t in enumerate(elems):
            assert table[i, j] == index[I3.mul(s, t)]
    assert table.dtype == np.int32
