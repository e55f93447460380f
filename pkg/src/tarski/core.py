"""Model-generic calculus for Boolean inverse meet-monoids.

A :class:`Model` supplies multiplication, inversion, zero, one, a fixed-point
operator and a bridge between idempotent elements and a Boolean algebra of
type :class:`~tarski.boolean.BooleanElement`.  Everything else (orders,
meets, joins, supports, special involutions and 3-cycles) is derived here
from those primitives, so one code path serves every model.
"""
from abc import ABC, abstractmethod
from typing import NamedTuple, Optional

from .errors import (
    ConsistencyError,
    IncompatibleParts,
    InfiniteGroup,
    NotAUnit,
    NotInfinitesimal,
    NotTwoInfinitesimal,
)


class Model(ABC):
    """Abstract Boolean inverse meet-monoid."""

    name = "model"

    @property
    @abstractmethod
    def zero(self): ...

    @property
    @abstractmethod
    def one(self): ...

    @abstractmethod
    def mul(self, s, t):
        """Product ``s t``; as maps, apply ``t`` first."""

    @abstractmethod
    def inv(self, s): ...

    @abstractmethod
    def is_idempotent(self, s): ...

    @abstractmethod
    def phi_raw(self, s):
        """Fixed-point idempotent of ``s`` as a Boolean element."""

    @abstractmethod
    def embed(self, b):
        """Boolean element -> idempotent element."""

    @abstractmethod
    def extract(self, e):
        """Idempotent element -> Boolean element."""

    @abstractmethod
    def join_raw(self, parts):
        """Union of pairwise compatible elements (no compatibility check)."""

    def eq(self, s, t):
        return s == t

    def native_meet(self, s, t):
        """Model-specific meet used only as a cross-check; ``None`` if absent."""
        return None

    def complement(self, b):
        return b.complement()

    def basic_map(self, p, q):
        """Element with domain ``p`` and range ``q`` for basic parts, else ``None``."""
        raise NotImplementedError

    def enumerate_all(self):
        raise InfiniteGroup(f"{self.name} is not enumerable")

    def enumerate_units(self):
        return (s for s in self.enumerate_all() if is_unit(self, s))

    def enumerate_idempotents(self):
        return (s for s in self.enumerate_all() if self.is_idempotent(s))

    @property
    def is_finite(self):
        return False

    def bool_one(self):
        return self.extract(self.one)

    def bool_zero(self):
        return self.extract(self.zero)

    def format(self, s):
        return str(s)


# -- basic structure -----------------------------------------------------------

def dom(m, s):
    return m.mul(m.inv(s), s)


def ran(m, s):
    return m.mul(s, m.inv(s))


def is_zero(m, s):
    return m.eq(s, m.zero)


def natural_leq(m, s, t):
    # s <= t  iff  s = t s^-1 s
    return m.eq(s, m.mul(t, dom(m, s)))


def compatible(m, s, t):
    return m.is_idempotent(m.mul(m.inv(s), t)) and m.is_idempotent(m.mul(s, m.inv(t)))


def orthogonal(m, s, t):
    return is_zero(m, m.mul(m.inv(s), t)) and is_zero(m, m.mul(s, m.inv(t)))


def conjugate(m, g, s):
    return m.mul(m.mul(g, s), m.inv(g))


def is_unit(m, s):
    return m.eq(dom(m, s), m.one) and m.eq(ran(m, s), m.one)


def power(m, s, k):
    out = m.one
    for _ in range(k):
        out = m.mul(out, s)
    return out


def _require_unit(m, *gs):
    for g in gs:
        if not is_unit(m, g):
            raise NotAUnit(f"{m.format(g)} is not a unit")


def commutator(m, g, h):
    _require_unit(m, g, h)
    return m.mul(m.mul(g, h), m.mul(m.inv(g), m.inv(h)))


def commutes(m, g, h):
    return m.eq(m.mul(g, h), m.mul(h, g))


# -- fixed points and supports ---------------------------------------------

def phi(m, s):
    """Largest idempotent beneath ``s`` (equivalently ``s`` meet 1)."""
    return m.embed(m.phi_raw(s))


def sigma_raw(m, s):
    return m.complement(m.phi_raw(s)).intersect(m.extract(dom(m, s)))


def sigma(m, s):
    """Support: complement of the fixed part, restricted to the domain."""
    return m.embed(sigma_raw(m, s))


def extent_raw(m, a):
    return m.extract(dom(m, a)).union(m.extract(ran(m, a)))


def extent(m, a):
    return m.embed(extent_raw(m, a))


def meet(m, s, t):
    """Greatest lower bound ``phi(s t^-1) t``."""
    return m.mul(phi(m, m.mul(s, m.inv(t))), t)


# -- joins -------------------------------------------------------------------

def join(m, parts):
    parts = list(parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not compatible(m, parts[i], parts[j]):
                raise IncompatibleParts(
                    i, j, f"{m.format(parts[i])} and {m.format(parts[j])} are not compatible"
                )
    if not parts:
        return m.zero
    return m.join_raw(parts)


# -- infinitesimals and special units --------------------------------------

def is_infinitesimal(m, a):
    squares_to_zero = is_zero(m, m.mul(a, a))
    by_orthogonality = orthogonal(m, dom(m, a), ran(m, a))
    if squares_to_zero != by_orthogonality:
        raise ConsistencyError(f"a^2 = 0 and d(a) ⊥ r(a) disagree for {m.format(a)}")
    return squares_to_zero


def special_involution(m, a):
    """The involution ``a^-1 ∨ a ∨ ¬e(a)`` above a nonzero infinitesimal."""
    if is_zero(m, a) or not is_infinitesimal(m, a):
        raise NotInfinitesimal(f"{m.format(a)} is not a nonzero infinitesimal")
    rest = m.embed(m.complement(extent_raw(m, a)))
    return m.join_raw([m.inv(a), a, rest])


class ThreeCycle(NamedTuple):
    g: object
    h: object
    k: object


def is_two_infinitesimal(m, b, a):
    if is_zero(m, a) or is_zero(m, b):
        return False
    if not (is_infinitesimal(m, a) and is_infinitesimal(m, b)):
        return False
    if not m.eq(dom(m, b), ran(m, a)):
        return False
    return is_infinitesimal(m, m.mul(b, a))


def special_three_cycle(m, b, a):
    """Special 3-cycle on the 2-infinitesimal ``(b, a)``.

    Returns ``(g, h, k)`` where ``h``, ``k`` are the special involutions over
    ``a`` and ``(ba)^-1`` and ``g = [h, k] = (hk)^2`` has been verified.
    """
    if not is_two_infinitesimal(m, b, a):
        raise NotTwoInfinitesimal(f"({m.format(b)}, {m.format(a)}) is not a 2-infinitesimal")
    c = m.inv(m.mul(b, a))
    ext = m.extract(ran(m, b)).union(m.extract(dom(m, b))).union(m.extract(dom(m, a)))
    g = m.join_raw([a, b, c, m.embed(m.complement(ext))])
    h = special_involution(m, a)
    k = special_involution(m, c)
    hk = m.mul(h, k)
    if not (m.eq(g, commutator(m, h, k)) and m.eq(g, m.mul(hk, hk))):
        raise ConsistencyError("special 3-cycle is not the commutator of its involutions")
    return ThreeCycle(g, h, k)


# -- Clifford test ---------------------------------------------------------

class CliffordReport(NamedTuple):
    is_clifford_on_sample: bool
    infinitesimal_witness: Optional[object]


def infinitesimal_from(m, a):
    """A nonzero infinitesimal built from ``a`` with ``d(a) != r(a)``."""
    d, r = m.extract(dom(m, a)), m.extract(ran(m, a))
    if d.disjoint(r):
        return a
    if not d.leq(r):
        return m.mul(a, m.embed(d.minus(r)))
    return m.mul(m.inv(a), m.embed(r.minus(d)))


def clifford_report(m, sample):
    witness = None
    clifford = True
    for s in sample:
        if not m.eq(dom(m, s), ran(m, s)):
            clifford = False
            if witness is None:
                witness = infinitesimal_from(m, s)
    if witness is not None:
        if is_zero(m, witness) or not is_infinitesimal(m, witness):
            raise ConsistencyError("constructed witness is not an infinitesimal")
    if clifford != (witness is None):
        raise ConsistencyError("Clifford status and infinitesimal search disagree")
    return CliffordReport(clifford, witness)
