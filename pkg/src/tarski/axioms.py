"""Constructive witnesses for the axioms F1-F3, piecewise factorization,
germ units and the standard generating sets of Sym(S) and Alt(S).

All constructions are model-generic; they rely on the model hooks
``basic_map`` (a single-piece map between basic parts) and ``refine``
(children of a basic part, empty in finite models).
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import NamedTuple

from . import core
from .boolean import BooleanElement, Clopen, comparable
from .cuntz import (
    CuntzModel,
    Germ,
    PrefixBijection,
    compose,
    swap_involution,
    unit_extension,
)
from .errors import (
    ConsistencyError,
    NotAnInvolution,
    NotBelowSupport,
    SearchExhausted,
    ZeroClopen,
    ZeroElement,
    ZeroIdempotent,
)
from .symmetric import SymmetricModel, pencil_exists

DEPTH_CAP = 32


def _as_bool(m, e):
    return e if isinstance(e, BooleanElement) else m.extract(e)


def _nonzero(e):
    if e.is_zero():
        cls = ZeroClopen if isinstance(e, Clopen) else ZeroIdempotent
        raise cls("the idempotent must be nonzero")


def _join_bool(parts):
    out = parts[0]
    for p in parts[1:]:
        out = out.union(p)
    return out


@dataclass(frozen=True)
class PencilWitness:
    elements: tuple
    source: object
    target: object

    def verify(self, m):
        doms = [m.extract(core.dom(m, x)) for x in self.elements]
        return _join_bool(doms) == self.source and all(
            m.extract(core.ran(m, x)).leq(self.target) for x in self.elements
        )


def pencil_witness(m, e, f):
    """A verified pencil from ``e`` to ``f``, or None."""
    xs = pencil_exists(m, e, f)
    if xs is None:
        return None
    w = PencilWitness(tuple(xs), _as_bool(m, e), _as_bool(m, f))
    if not w.verify(m):
        raise ConsistencyError("pencil fails its postconditions")
    return w


def is_involution(m, t):
    return core.is_unit(m, t) and not m.eq(t, m.one) and m.eq(m.mul(t, t), m.one)


# -- F1 ----------------------------------------------------------------------

def f1_witness(m, e):
    """Special involutions whose supports join to exactly ``e``."""
    e = _as_bool(m, e)
    _nonzero(e)
    parts = e.basic_parts()
    if len(parts) == 1:
        left, right = parts[0].split()
        parts = left.basic_parts() + right.basic_parts()
    pairs = [(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
    if len(parts) % 2:
        pairs.append((parts[-1], parts[0]))
    out = [core.special_involution(m, m.basic_map(p, q)) for p, q in pairs]
    if _join_bool([core.sigma_raw(m, t) for t in out]) != e:
        raise ConsistencyError("F1 supports do not join to e")
    return out


# -- F2 ----------------------------------------------------------------------

def orthogonal_piece(m, g, e, depth_cap=DEPTH_CAP):
    """Basic part ``f <= e`` with ``f ⊥ g f g^-1``, found breadth-first."""
    e = _as_bool(m, e)
    fixed = m.phi_raw(g)
    queue = deque((p, 0) for p in e.basic_parts())
    while queue:
        p, depth = queue.popleft()
        if p.leq(fixed):
            continue
        moved = m.extract(core.conjugate(m, g, m.embed(p)))
        if p.disjoint(moved):
            return p
        if depth < depth_cap:
            queue.extend((c, depth + 1) for c in m.refine(p))
    raise SearchExhausted(f"no piece of {e} is moved off itself within depth {depth_cap}")


class F2Witness(NamedTuple):
    g: object
    f: object


def f2_witness(m, t, e, depth_cap=DEPTH_CAP):
    """Special involution ``g`` with ``σ(g) <= e(te)`` and ``σ(g) <= φ(tg)``."""
    if not is_involution(m, t):
        raise NotAnInvolution(f"{m.format(t)} is not an involution")
    e = _as_bool(m, e)
    _nonzero(e)
    if not e.leq(core.sigma_raw(m, t)):
        raise NotBelowSupport(f"{e} is not below the support of {m.format(t)}")
    f = orthogonal_piece(m, t, e, depth_cap)
    g = core.special_involution(m, m.mul(t, m.embed(f)))
    supp = core.sigma_raw(m, g)
    if not (
        supp.leq(core.extent_raw(m, m.mul(t, m.embed(e))))
        and supp.leq(m.phi_raw(m.mul(t, g)))
    ):
        raise ConsistencyError("F2 witness fails its postconditions")
    return F2Witness(g, f)


# -- F3 ----------------------------------------------------------------------

class F3Witness(NamedTuple):
    g: object
    h: object
    k: object
    b: object
    a: object


def three_pieces(e):
    parts = e.basic_parts()
    while len(parts) < 3:
        left, right = parts[0].split()
        parts = left.basic_parts() + right.basic_parts() + parts[1:]
    return parts[:3]


def f3_witness(m, e):
    """Special 3-cycle with support below ``e``, with its 2-infinitesimal ``(b, a)``."""
    e = _as_bool(m, e)
    _nonzero(e)
    e1, e2, e3 = three_pieces(e)
    a = m.basic_map(e1, e2)
    b = m.basic_map(e2, e3)
    g, h, k = core.special_three_cycle(m, b, a)
    if not (
        core.sigma_raw(m, g).leq(e)
        and m.eq(core.power(m, g, 3), m.one)
        and not m.eq(g, m.one)
    ):
        raise ConsistencyError("F3 witness fails its postconditions")
    return F3Witness(g, h, k, b, a)


# -- piecewise factorization -------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """``s = ⋁ g_i e_i`` with every ``g_i`` a unit."""

    pieces: tuple = field(default_factory=tuple)

    def restrictions(self, m):
        return [m.mul(g, e) for g, e in self.pieces]

    def join(self, m):
        return core.join(m, self.restrictions(m))


def _group_by_unit(m, pieces):
    grouped = {}
    for g, e in pieces:
        grouped.setdefault(g, []).append(m.extract(e))
    return [(g, m.embed(_join_bool(es))) for g, es in grouped.items()]


def piecewise_factorize(m, s, strategy="default"):
    """Factor ``s`` into restrictions of units.

    Cuntz models use one unit per canonical pair (``strategy="refined"``
    splits every pair into its children first).  Finite models use a single
    unit above ``s``; ``"reversed"`` and ``"atomwise"`` give alternative,
    equally valid factorizations.
    """
    if core.is_zero(m, s):
        raise ZeroElement("cannot factor the zero element")
    if core.is_unit(m, s):
        pieces = [(s, m.one)]
    elif isinstance(m, CuntzModel):
        pairs = s.pairs
        if strategy == "refined":
            pairs = [(u + (a,), v + (a,)) for u, v in pairs for a in range(m.arity)]
        # a pair with exactly one empty word lies under no unit until split
        pairs = [
            q
            for u, v in pairs
            for q in (
                [(u + (a,), v + (a,)) for a in range(m.arity)]
                if (u == ()) != (v == ())
                else [(u, v)]
            )
        ]
        pieces = [
            (unit_extension(u, v, m.arity), m.embed(Clopen.cylinder(m.arity, u)))
            for u, v in pairs
        ]
        pieces = _group_by_unit(m, pieces)
    elif strategy == "atomwise":
        pieces = []
        for p in m.extract(core.dom(m, s)).basic_parts():
            piece = m.mul(s, m.embed(p))
            pieces.append((m.extend_to_unit(piece), m.embed(p)))
    else:
        pieces = [(m.extend_to_unit(s, reverse=strategy == "reversed"), core.dom(m, s))]
    fac = Factorization(tuple(pieces))
    if not all(core.is_unit(m, g) for g, _ in fac.pieces):
        raise ConsistencyError("factorization piece is not a unit")
    if not m.eq(fac.join(m), s):
        raise ConsistencyError(f"factorization of {m.format(s)} does not rejoin")
    return fac


# -- germs -------------------------------------------------------------------

def germ_unit_factors(germ, depth_cap=DEPTH_CAP):
    """At most two special involutions whose product has the given germ.

    Near the base the germ is a single substitution ``c -> c'``.  When the two
    cylinders can be made disjoint one special involution suffices; otherwise
    the base is a fixed point and the map is routed through a third cylinder.
    """
    n = germ.element.arity
    u, v = germ._key
    if u == v:
        return []
    base = germ.base
    for length in range(max(len(u), 1), depth_cap + 1):
        c = base.prefix(length)
        image = v + c[len(u):]
        if not comparable(c, image):
            return [swap_involution(c, image, n)]
    # one letter past u keeps the image nonempty when v is the empty word
    c = base.prefix(max(len(u), 1) + (not v))
    image = v + c[len(u):]
    w = min(c, image, key=len)
    d = w[:-1] + ((w[-1] + 1) % n,)
    return [swap_involution(d, image, n), swap_involution(c, d, n)]


def germ_unit(germ, depth_cap=DEPTH_CAP):
    """A unit of Sym(C_n) whose germ at ``germ.base`` is ``germ``."""
    n = germ.element.arity
    g = PrefixBijection.identity(n)
    for t in germ_unit_factors(germ, depth_cap):
        g = compose(g, t)
    if Germ(g, germ.base) != germ:
        raise ConsistencyError("germ unit does not reproduce the germ")
    return g


# -- generators --------------------------------------------------------------

def _dedupe(items):
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _words_upto(arity, depth):
    return [w for k in range(1, depth + 1) for w in product(range(arity), repeat=k)]


def sym_generators(m, depth=2):
    """Special involutions: transpositions in I_n, word swaps up to ``depth`` in C_n."""
    if isinstance(m, SymmetricModel):
        return [m.transposition(i, j) for i, j in combinations(range(m.n), 2)]
    words = _words_upto(m.arity, depth)
    return _dedupe(
        swap_involution(u, v, m.arity)
        for u, v in combinations(words, 2)
        if not comparable(u, v)
    )


def alt_generators(m, depth=2):
    """Special 3-cycles over all 2-infinitesimals on basic pieces."""
    if isinstance(m, SymmetricModel):
        atoms = m.extract(m.one).basic_parts()
        return _dedupe(
            core.special_three_cycle(
                m, m.basic_map(atoms[y], atoms[z]), m.basic_map(atoms[x], atoms[y])
            ).g
            for x, y, z in permutations(range(m.n), 3)
        )
    words = _words_upto(m.arity, depth)
    out = []
    for x, y, z in permutations(words, 3):
        if comparable(x, y) or comparable(y, z) or comparable(x, z):
            continue
        a = PrefixBijection(m.arity, [(x, y)])
        b = PrefixBijection(m.arity, [(y, z)])
        out.append(core.special_three_cycle(m, b, a).g)
    return _dedupe(out)

