"""Recovering a monoid isomorphism from an isomorphism of unit groups.

Finite models (I_n) run the whole pipeline: local subgroups, the brute-force
sets Z_t, S_t, W_t, support skeletons, the ultrafilter map β, the Boolean
isomorphism γ, the piece map θ and the assembled Θ, which is verified against
multiplication tables.  Cuntz models get the support-based membership test,
constructive separating witnesses and θ against an injected γ.
"""
import json
from collections import deque
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np

from . import core
from .axioms import f3_witness, is_involution, orthogonal_piece, piecewise_factorize, sym_generators
from .boolean import BooleanElement, Clopen, FiniteSet
from .cuntz import Point
from .errors import (
    ArityMismatch,
    AtomObstruction,
    ConsistencyError,
    EquivarianceFailure,
    InfiniteGroup,
    NotAHomomorphism,
    NotAnInvolution,
    NotAnIsomorphism,
    NotAUnit,
    OrderTransferFailure,
    PreconditionViolated,
    SearchExhausted,
    SkeletonNotUltrafilter,
)
from .symmetric import (
    PartialPerm,
    SymmetricModel,
    Ultrafilter,
    element_index,
    multiplication_table,
)

FULL_PAIR_LIMIT = 120


def _as_bool(m, e):
    return e if isinstance(e, BooleanElement) else m.extract(e)


def _require_finite(m):
    if not m.is_finite:
        raise InfiniteGroup(f"the unit group of {m.name} cannot be enumerated")


# -- group isomorphisms ------------------------------------------------------

class GroupIso:
    """An isomorphism ``α: U(S) -> U(T)`` given by a pair of mapping oracles."""

    def __init__(self, domain, codomain, forward, backward, name="alpha"):
        self.domain = domain
        self.codomain = codomain
        self.forward = forward
        self.backward = backward
        self.name = name

    def __call__(self, g):
        return self.forward(g)

    def __repr__(self):
        return f"GroupIso({self.name}: {self.domain.name} -> {self.codomain.name})"

    @classmethod
    def identity(cls, m):
        return cls(m, m, lambda g: g, lambda g: g, name="identity")

    @classmethod
    def inner(cls, m, pi):
        """Conjugation ``g -> π g π^-1`` by a unit ``π``."""
        if not core.is_unit(m, pi):
            raise NotAUnit(f"{m.format(pi)} is not a unit")
        pinv = m.inv(pi)
        return cls(
            m,
            m,
            lambda g: core.conjugate(m, pi, g),
            lambda g: core.conjugate(m, pinv, g),
            name=f"conj({m.format(pi)})",
        )

    @classmethod
    def from_table(cls, domain, codomain, table, name="table"):
        table = dict(table)
        back = {v: k for k, v in table.items()}
        if len(back) != len(table):
            raise NotAnIsomorphism("table is not injective")
        return cls(domain, codomain, table.__getitem__, back.__getitem__, name=name)

    @classmethod
    def from_generator_images(cls, domain, codomain, generators, images, name="generated"):
        """Extend generator images multiplicatively over the whole finite group.

        Every edge ``g -> g s`` of the Cayley graph is checked, so the result
        is a homomorphism whenever construction succeeds.
        """
        _require_finite(domain)
        table = {domain.one: codomain.one}
        queue = deque([domain.one])
        while queue:
            g = queue.popleft()
            for s, x in zip(generators, images):
                h = domain.mul(g, s)
                image = codomain.mul(table[g], x)
                if h not in table:
                    table[h] = image
                    queue.append(h)
                elif not codomain.eq(table[h], image):
                    raise NotAHomomorphism(
                        f"relation violated at {domain.format(h)}", witness=(g, s)
                    )
        size = sum(1 for _ in domain.enumerate_units())
        if len(table) != size:
            raise NotAnIsomorphism(f"generators reach {len(table)} of {size} units")
        return cls.from_table(domain, codomain, table, name=name)

    def validate(self, sample=None):
        """Check inverse and multiplicativity; all pairs for small finite groups."""
        if sample is None:
            _require_finite(self.domain)
            sample = list(self.domain.enumerate_units())
        sample = list(sample)
        for g in sample:
            if not self.domain.eq(self.backward(self.forward(g)), g):
                raise NotAnIsomorphism("backward is not inverse to forward", witness=g)
        if len(sample) <= FULL_PAIR_LIMIT:
            pairs = ((g, h) for g in sample for h in sample)
        else:
            pairs = zip(sample, sample[1:] + sample[:1])
        for g, h in pairs:
            lhs = self.forward(self.domain.mul(g, h))
            rhs = self.codomain.mul(self.forward(g), self.forward(h))
            if not self.codomain.eq(lhs, rhs):
                raise NotAHomomorphism("forward is not multiplicative", witness=(g, h))
        return True


def _fixture_path(path):
    path = Path(path)
    if path.exists():
        return path
    packaged = resources.files("tarski") / "fixtures" / path.name
    if packaged.is_file():
        return packaged
    raise FileNotFoundError(path)


def load_group_iso(path, m):
    """Load a generator-image fixture (JSON) as an automorphism of U(I_n)."""
    data = json.loads(_fixture_path(path).read_text())
    if data["n"] != m.n:
        raise ArityMismatch(f"fixture is for n={data['n']}, model has n={m.n}")
    gens = {
        name: PartialPerm.from_cycles(m.n, *map(tuple, cycles))
        for name, cycles in data["generators"].items()
    }
    names = list(gens)
    images = []
    for name in names:
        x = m.one
        for letter in data["images"][name]:
            x = m.mul(x, gens[letter])
        images.append(x)
    return GroupIso.from_generator_images(
        m, m, [gens[k] for k in names], images, name=data.get("name", Path(path).stem)
    )


# -- local subgroups and the sets Z_t, S_t, W_t ----------------------------

def involutions(m):
    _require_finite(m)
    return [g for g in m.enumerate_units() if is_involution(m, g)]


def local_subgroup_contains(m, g, e):
    """``g ∈ U(e)``, i.e. ``σ(g) <= e``."""
    if not core.is_unit(m, g):
        raise NotAUnit(f"{m.format(g)} is not a unit")
    return core.sigma_raw(m, g).leq(_as_bool(m, e))


def local_subgroup(m, e):
    _require_finite(m)
    return [g for g in m.enumerate_units() if local_subgroup_contains(m, g, e)]


def _require_involution(m, t):
    if not is_involution(m, t):
        raise NotAnInvolution(f"{m.format(t)} is not an involution")


def centralizer(m, t, group=None):
    group = list(m.enumerate_units()) if group is None else group
    return [a for a in group if core.commutes(m, a, t)]


def zt_set(m, t):
    _require_finite(m)
    _require_involution(m, t)
    ct = centralizer(m, t)
    return [
        s
        for s in ct
        if m.eq(m.mul(s, s), m.one)
        and all(core.commutes(m, s, core.conjugate(m, a, s)) for a in ct)
    ]


def st_set(m, t, zt=None):
    _require_finite(m)
    _require_involution(m, t)
    zt = zt_set(m, t) if zt is None else zt
    out = []
    for a in m.enumerate_units():
        if all(core.commutes(m, a, s) for s in zt):
            sq = m.mul(a, a)
            if sq not in out:
                out.append(sq)
    return out


def wt_set(m, t, st=None):
    _require_finite(m)
    _require_involution(m, t)
    st = st_set(m, t) if st is None else st
    return [a for a in m.enumerate_units() if all(core.commutes(m, a, b) for b in st)]


class WtReport(NamedTuple):
    t: object
    zt_size: int
    st_size: int
    wt_size: int
    local_size: int
    agrees: bool


def wt_report(m, t):
    """Compare brute-force ``W_t`` with ``U(σ(t))`` (an experiment in I_n)."""
    zt = zt_set(m, t)
    st = st_set(m, t, zt)
    wt = wt_set(m, t, st)
    local = local_subgroup(m, core.sigma_raw(m, t))
    return WtReport(t, len(zt), len(st), len(wt), len(local), set(wt) == set(local))


def wt_membership_theorem(m, g, t):
    """Support-based membership ``g ∈ W_t``, i.e. ``σ(g) <= σ(t)``."""
    _require_involution(m, t)
    return local_subgroup_contains(m, g, core.sigma_raw(m, t))


def st_samples(m, t, rng, count=100, max_depth=3):
    """Elements ``c^2`` of ``S_t``, ``c`` a special 3-cycle with support below ``φ(t)``."""
    _require_involution(m, t)
    fixed = m.phi_raw(t)
    if fixed.is_zero():
        return [m.one]
    parts = fixed.basic_parts()
    out = []
    for _ in range(count):
        p = parts[rng.randrange(len(parts))]
        word = p.words[0] + tuple(rng.randrange(m.arity) for _ in range(rng.randrange(max_depth + 1)))
        c = f3_witness(m, Clopen.cylinder(m.arity, word)).g
        out.append(m.mul(c, c))
    return out


def _finite_separator(m, a, t):
    fixed = m.phi_raw(t)
    for x, y, z in combinations(sorted(fixed), 3):
        for cyc in ((x, y, z), (x, z, y)):
            c = PartialPerm.from_cycles(m.n, cyc)
            b = m.mul(c, c)
            if not core.commutes(m, a, b):
                return b
    raise SearchExhausted("no 3-cycle inside the fixed set of t separates a")


def separating_witness(m, a, t, zt_sample=()):
    """``b ∈ S_t`` with ``[a, b] != 1`` whenever ``σ(a) </= σ(t)``.

    ``b`` is the square of a special 3-cycle supported on a piece of ``φ(t)``
    that ``a`` moves off itself.  Finite models fall back to a search over
    3-cycles when that piece is an atom.
    """
    _require_involution(m, t)
    if not core.is_unit(m, a):
        raise NotAUnit(f"{m.format(a)} is not a unit")
    if wt_membership_theorem(m, a, t):
        raise PreconditionViolated("σ(a) <= σ(t): nothing to separate")
    e = orthogonal_piece(m, a, m.phi_raw(t))
    try:
        c = f3_witness(m, e).g
        b = m.mul(c, c)
    except AtomObstruction:
        if not isinstance(m, SymmetricModel):
            raise
        b = _finite_separator(m, a, t)
    if not core.natural_leq(m, m.embed(core.sigma_raw(m, b)), m.embed(m.phi_raw(t))):
        raise ConsistencyError("separator is not supported inside φ(t)")
    if core.commutes(m, a, b):
        raise ConsistencyError("separator commutes with a")
    for s in [t, *zt_sample]:
        if not core.commutes(m, b, s):
            raise ConsistencyError(f"separator fails to commute with {m.format(s)}")
    return b


# -- support skeletons and β -------------------------------------------------

def _contains(F, e):
    return F.in_clopen(e) if isinstance(F, Point) else F.contains(e)


@dataclass(frozen=True)
class SkeletonFilter:
    """Supports ``σ(t)`` of involutions ``t`` whose support lies in an ultrafilter."""

    ultrafilter: object
    generators: tuple  # of (support, involution)

    def supports(self):
        return [e for e, _ in self.generators]

    def involutions(self):
        return [t for _, t in self.generators]

    def intersection(self):
        out = self.generators[0][0]
        for e, _ in self.generators[1:]:
            out = out.intersect(e)
        return out

    def is_down_directed(self):
        sups = set(self.supports())
        return all(
            any(c.leq(a.intersect(b)) for c in sups) for a, b in combinations(sups, 2)
        )


def _cuntz_involutions(m, depth_cap):
    gens = sym_generators(m, depth_cap)
    out = list(gens)
    seen = set(out)
    for g, h in combinations(gens, 2):
        x = m.mul(g, h)
        if x not in seen and is_involution(m, x):
            seen.add(x)
            out.append(x)
    return out


def support_skeleton(m, F, depth_cap=2):
    """Skeleton at ``F``: exhaustive in I_n, bounded by ``depth_cap`` in C_n."""
    pool = involutions(m) if m.is_finite else _cuntz_involutions(m, depth_cap)
    gens = []
    for t in pool:
        e = core.sigma_raw(m, t)
        if _contains(F, e):
            gens.append((e, t))
    for e, t in gens:
        if e != core.sigma_raw(m, t):
            raise ConsistencyError("skeleton generator is not the support of its involution")
    return SkeletonFilter(F, tuple(gens))


def beta(m, F, alpha, skeleton=None):
    """Image ultrafilter of ``F``: the meet of ``σ(α(t))`` must be a single atom."""
    _require_finite(m)
    skeleton = support_skeleton(m, F) if skeleton is None else skeleton
    if not skeleton.generators:
        raise SkeletonNotUltrafilter(f"the skeleton at {F} is empty", witness=(F, None))
    target = alpha.codomain
    meet = None
    for t in skeleton.involutions():
        e = core.sigma_raw(target, alpha(t))
        meet = e if meet is None else meet.intersect(e)
    if len(meet) != 1:
        raise SkeletonNotUltrafilter(
            f"supports of α-images over the skeleton at {F} meet in {meet}, not an atom",
            witness=(F, meet),
        )
    (atom,) = meet
    return Ultrafilter(target.n, atom)


def beta_map(m, alpha):
    return {F.atom: beta(m, F, alpha) for F in (Ultrafilter(m.n, i) for i in range(m.n))}


def check_equivariance(m, alpha, betas):
    """``β(g F g^-1) = α(g) β(F) α(g)^-1`` for every unit and every point."""
    for g in m.enumerate_units():
        ag = alpha(g)
        for i, F in betas.items():
            lhs = betas[g(i)].atom
            rhs = ag(F.atom)
            if lhs != rhs:
                raise EquivarianceFailure(
                    f"β fails to intertwine {m.format(g)} at atom {i}", witness=(g, i)
                )
    return True


def gamma(e, betas, n):
    """``γ(e)``: the union of the β-images of the atoms under ``e``."""
    return FiniteSet(n, (betas[i].atom for i in e))


def check_gamma_supports(m, alpha, gamma_fn):
    """``γ(σ(t)) = σ(α(t))`` on every involution."""
    for t in involutions(m):
        if gamma_fn(core.sigma_raw(m, t)) != core.sigma_raw(alpha.codomain, alpha(t)):
            raise EquivarianceFailure(f"γ does not carry the support of {m.format(t)}", witness=t)
    return True


def theta(m, g, e, alpha, gamma_fn):
    """``θ(g e) = α(g) γ(e)``, after checking that ``e <= g`` iff ``γ(e) <= α(g)``."""
    target = alpha.codomain
    e = _as_bool(m, e)
    ge = gamma_fn(e)
    ag = alpha(g)
    left = core.natural_leq(m, m.embed(e), g)
    right = core.natural_leq(target, target.embed(ge), ag)
    if left != right:
        raise OrderTransferFailure(
            f"e <= g is {left} but γ(e) <= α(g) is {right}", witness=(g, e)
        )
    return target.mul(ag, target.embed(ge))


def conjugation_gamma(m, u):
    """γ induced by a unit ``u``: ``e -> u e u^-1`` on Boolean elements."""
    return lambda e: m.extract(core.conjugate(m, u, m.embed(e)))


@dataclass
class Reconstruction:
    betas: dict
    gamma: Callable
    theta: dict
    index_map: np.ndarray

    def __call__(self, s):
        return self.theta[s]


def _check_table(n, mapping):
    elems, index = element_index(n)
    table = multiplication_table(n)
    idx = np.array([index[mapping[s]] for s in elems], dtype=np.int64)
    if len(set(idx.tolist())) != len(elems):
        raise NotAnIsomorphism("Θ is not a bijection", witness=None)
    bad = np.argwhere(idx[table] != table[np.ix_(idx, idx)])
    if bad.size:
        i, j = bad[0]
        raise NotAnIsomorphism(
            "Θ does not preserve a product", witness=(elems[i], elems[j])
        )
    return idx


def reconstruct(m, alpha, strategy="default"):
    """Build and verify ``Θ: I_n -> I_n`` extending ``α`` (finite models only)."""
    if not isinstance(m, SymmetricModel) or not isinstance(alpha.codomain, SymmetricModel):
        raise InfiniteGroup("end-to-end reconstruction runs on finite symmetric models")
    betas = beta_map(m, alpha)
    check_equivariance(m, alpha, betas)
    n = alpha.codomain.n

    def gamma_fn(e):
        return gamma(e, betas, n)

    check_gamma_supports(m, alpha, gamma_fn)
    target = alpha.codomain
    mapping = {}
    for s in m.enumerate_all():
        if core.is_zero(m, s):
            mapping[s] = target.zero
            continue
        fac = piecewise_factorize(m, s, strategy)
        pieces = [theta(m, g, e, alpha, gamma_fn) for g, e in fac.pieces]
        mapping[s] = core.join(target, pieces)
    for g in m.enumerate_units():
        if not target.eq(mapping[g], alpha(g)):
            raise NotAnIsomorphism("Θ does not extend α", witness=g)
    idx = _check_table(m.n, mapping)
    return Reconstruction(betas, gamma_fn, mapping, idx)
