"""Finite symmetric inverse monoids I_n, used as brute-force oracles.

Also hosts the finite checkers (pencils, 0-simplifying, fundamental), finite
Stone duality (principal ultrafilters and the pair groupoid) and the product
and sub-models used as counter-examples.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import NamedTuple

import numpy as np

from . import core
from .boolean import BooleanElement, FiniteSet, ProductSet
from .errors import ConsistencyError, InvalidLetter, NotInjective, ZeroIdempotent


class PartialPerm:
    """Partial injective map on ``{0..n-1}``; ``images[i] is None`` off the domain."""

    __slots__ = ("n", "images")

    def __init__(self, n, images):
        images = tuple(images)
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        seen = set()
        for y in images:
            if y is None:
                continue
            if not 0 <= y < n:
                raise InvalidLetter(f"{y} outside {{0..{n - 1}}}")
            if y in seen:
                raise NotInjective(f"{y} hit twice")
            seen.add(y)
        self.n = n
        self.images = images

    @classmethod
    def from_pairs(cls, n, pairs):
        images = [None] * n
        for x, y in pairs:
            if not 0 <= x < n:
                raise InvalidLetter(f"{x} outside {{0..{n - 1}}}")
            if images[x] is not None:
                raise NotInjective(f"{x} mapped twice")
            images[x] = y
        return cls(n, images)

    @classmethod
    def from_cycles(cls, n, *cycles):
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(n, images)

    @classmethod
    def identity(cls, n, support=None):
        keep = range(n) if support is None else set(support)
        return cls(n, [i if i in keep else None for i in range(n)])

    @classmethod
    def parse(cls, text, n):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"partial permutation literal must be bracketed: {text!r}")
        pairs = []
        for item in filter(None, (p.strip() for p in text[1:-1].split(","))):
            x, _, y = item.partition(":")
            if not _:
                raise ValueError(f"expected 'x:y', got {item!r}")
            pairs.append((int(x), int(y)))
        return cls.from_pairs(n, pairs)

    def __eq__(self, other):
        return isinstance(other, PartialPerm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return "[" + ", ".join(f"{x}:{y}" for x, y in self.pairs()) + "]"

    def __repr__(self):
        return f"PartialPerm({self.n}, {self})"

    def __mul__(self, other):
        return compose(self, other)

    def __call__(self, x):
        return self.images[x]

    def pairs(self):
        return [(x, y) for x, y in enumerate(self.images) if y is not None]

    def to_json(self):
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    @property
    def domain(self):
        return FiniteSet(self.n, (x for x, y in enumerate(self.images) if y is not None))

    @property
    def range(self):
        return FiniteSet(self.n, (y for y in self.images if y is not None))

    def is_permutation(self):
        return None not in self.images

    def cycles(self):
        """Nontrivial cycles of a permutation, smallest point first."""
        seen, out = set(), []
        for x in range(self.n):
            if x in seen or self.images[x] == x:
                continue
            cyc = [x]
            seen.add(x)
            y = self.images[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self.images[y]
            out.append(tuple(cyc))
        return out


def compose(s, t):
    return PartialPerm(s.n, [None if y is None else s.images[y] for y in t.images])


def inverse(s):
    images = [None] * s.n
    for x, y in s.pairs():
        images[y] = x
    return PartialPerm(s.n, images)


def enumerate_partial_perms(n):
    for k in range(n + 1):
        for dom_ in combinations(range(n), k):
            for img in permutations(range(n), k):
                images = [None] * n
                for x, y in zip(dom_, img):
                    images[x] = y
                yield PartialPerm(n, images)


class SymmetricModel(core.Model):
    """I_n on the letters ``0..n-1``."""

    def __init__(self, n):
        self.n = n
        self.name = f"sym{n}"
        self._zero = PartialPerm(n, [None] * n)
        self._one = PartialPerm.identity(n)

    def __repr__(self):
        return f"SymmetricModel({self.n})"

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def is_finite(self):
        return True

    def mul(self, s, t):
        return compose(s, t)

    def inv(self, s):
        return inverse(s)

    def is_idempotent(self, s):
        return all(y is None or y == x for x, y in enumerate(s.images))

    def phi_raw(self, s):
        return FiniteSet(self.n, (x for x, y in enumerate(s.images) if y == x))

    def embed(self, b):
        return PartialPerm.identity(self.n, b)

    def extract(self, e):
        return e.domain

    def join_raw(self, parts):
        images = [None] * self.n
        for s in parts:
            for x, y in s.pairs():
                images[x] = y
        return PartialPerm(self.n, images)

    def native_meet(self, s, t):
        return PartialPerm(
            self.n, [y if y is not None and y == z else None for y, z in zip(s.images, t.images)]
        )

    def basic_map(self, p, q):
        (x,), (y,) = list(p), list(q)
        return PartialPerm.from_pairs(self.n, [(x, y)])

    def refine(self, p):
        return []

    def enumerate_all(self):
        return enumerate_partial_perms(self.n)

    def enumerate_units(self):
        return (PartialPerm(self.n, p) for p in permutations(range(self.n)))

    def enumerate_idempotents(self):
        return (
            PartialPerm.identity(self.n, support)
            for k in range(self.n + 1)
            for support in combinations(range(self.n), k)
        )

    def extend_to_unit(self, s, reverse=False):
        """A permutation above ``s``; the complement bijection is sorted or reversed."""
        free_src = [x for x in range(self.n) if s.images[x] is None]
        free_dst = sorted(set(range(self.n)) - {y for y in s.images if y is not None})
        if reverse:
            free_dst.reverse()
        images = list(s.images)
        for x, y in zip(free_src, free_dst):
            images[x] = y
        return PartialPerm(self.n, images)

    def parse(self, text):
        return PartialPerm.parse(text, self.n)

    def parse_idempotent(self, text):
        return FiniteSet.parse(text, self.n)

    def transposition(self, i, j):
        return PartialPerm.from_cycles(self.n, (i, j))


class ProductModel(core.Model):
    """Componentwise product of two models; a specimen that is not 0-simplifying."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.name = f"prod:{left.name},{right.name}"

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    @property
    def one(self):
        return (self.left.one, self.right.one)

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    def mul(self, s, t):
        return (self.left.mul(s[0], t[0]), self.right.mul(s[1], t[1]))

    def inv(self, s):
        return (self.left.inv(s[0]), self.right.inv(s[1]))

    def is_idempotent(self, s):
        return self.left.is_idempotent(s[0]) and self.right.is_idempotent(s[1])

    def phi_raw(self, s):
        return ProductSet(self.left.phi_raw(s[0]), self.right.phi_raw(s[1]))

    def embed(self, b):
        return (self.left.embed(b.left), self.right.embed(b.right))

    def extract(self, e):
        return ProductSet(self.left.extract(e[0]), self.right.extract(e[1]))

    def join_raw(self, parts):
        return (
            self.left.join_raw([p[0] for p in parts]),
            self.right.join_raw([p[1] for p in parts]),
        )

    def native_meet(self, s, t):
        a = self.left.native_meet(s[0], t[0])
        b = self.right.native_meet(s[1], t[1])
        return None if a is None or b is None else (a, b)

    def basic_map(self, p, q):
        if not p.left.is_zero() and not q.left.is_zero():
            return (self.left.basic_map(p.left, q.left), self.right.zero)
        if not p.right.is_zero() and not q.right.is_zero():
            return (self.left.zero, self.right.basic_map(p.right, q.right))
        return None

    def refine(self, p):
        return []

    def enumerate_all(self):
        return product(list(self.left.enumerate_all()), list(self.right.enumerate_all()))

    def enumerate_units(self):
        return product(list(self.left.enumerate_units()), list(self.right.enumerate_units()))

    def extend_to_unit(self, s, reverse=False):
        return (
            self.left.extend_to_unit(s[0], reverse),
            self.right.extend_to_unit(s[1], reverse),
        )

    def format(self, s):
        return f"({self.left.format(s[0])}, {self.right.format(s[1])})"

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"product literal must be parenthesised: {text!r}")
        left, right = _split_top(text[1:-1])
        return (self.left.parse(left), self.right.parse(right))

    def parse_idempotent(self, text):
        text = text.strip()
        left, right = _split_top(text[1:-1])
        return ProductSet(self.left.parse_idempotent(left), self.right.parse_idempotent(right))


def _split_top(body):
    depth = 0
    for i, c in enumerate(body):
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif c == "," and depth == 0:
            return body[:i].strip(), body[i + 1:].strip()
    raise ValueError(f"expected two components in {body!r}")


class IdempotentModel(core.Model):
    """The semilattice E(S) viewed as an inverse monoid in its own right."""

    def __init__(self, base):
        self.base = base
        self.name = f"E({base.name})"

    zero = property(lambda self: self.base.zero)
    one = property(lambda self: self.base.one)
    is_finite = property(lambda self: self.base.is_finite)

    def mul(self, s, t):
        return self.base.mul(s, t)

    def inv(self, s):
        return s

    def is_idempotent(self, s):
        return True

    def phi_raw(self, s):
        return self.base.extract(s)

    def embed(self, b):
        return self.base.embed(b)

    def extract(self, e):
        return self.base.extract(e)

    def join_raw(self, parts):
        return self.base.join_raw(parts)

    def enumerate_all(self):
        return self.base.enumerate_idempotents()

    def format(self, s):
        return self.base.format(s)


class LocalModel(core.Model):
    """The local monoid ``e S e`` with identity ``e``."""

    def __init__(self, base, e):
        self.base = base
        self.e = e
        self._bool = base.extract(e)
        self.name = f"{base.name}|{self._bool}"

    zero = property(lambda self: self.base.zero)
    one = property(lambda self: self.e)
    is_finite = property(lambda self: self.base.is_finite)

    def mul(self, s, t):
        return self.base.mul(s, t)

    def inv(self, s):
        return self.base.inv(s)

    def is_idempotent(self, s):
        return self.base.is_idempotent(s)

    def phi_raw(self, s):
        return self.base.phi_raw(s)

    def embed(self, b):
        return self.base.embed(b)

    def extract(self, e):
        return self.base.extract(e)

    def complement(self, b):
        return b.complement().intersect(self._bool)

    def join_raw(self, parts):
        return self.base.join_raw(parts)

    def enumerate_all(self):
        e = self._bool
        for s in self.base.enumerate_all():
            if self.base.extract(core.dom(self.base, s)).leq(e) and self.base.extract(
                core.ran(self.base, s)
            ).leq(e):
                yield s

    def format(self, s):
        return self.base.format(s)


# -- pencils and simplicity -------------------------------------------------

def _as_bool(m, e):
    return e if isinstance(e, BooleanElement) else m.extract(e)


def pencil_exists(m, e, f):
    """Elements ``x_i`` with ``e = ⋁ d(x_i)`` and every ``r(x_i) <= f``, or None."""
    e, f = _as_bool(m, e), _as_bool(m, f)
    if e.is_zero() or f.is_zero():
        raise ZeroIdempotent("pencils are defined between nonzero idempotents")
    if e.leq(f):
        return [m.embed(e)]
    targets = f.basic_parts()
    out = []
    for p in e.basic_parts():
        for q in targets:
            x = m.basic_map(p, q)
            if x is not None:
                out.append(x)
                break
        else:
            return None
    return out


class ZeroSimplifyingReport(NamedTuple):
    holds: bool
    failing_pair: object = None
    ideal: frozenset = None


def _ideal_generated(m, e):
    elems = list(m.enumerate_all())
    return frozenset(m.mul(m.mul(s, e), t) for s in elems for t in elems)


def zero_simplifying_report(m):
    idem = [e for e in m.enumerate_idempotents() if not core.is_zero(m, e)]
    for e in idem:
        for f in idem:
            if pencil_exists(m, e, f) is None:
                ideal = _ideal_generated(m, f)
                return ZeroSimplifyingReport(False, (e, f), ideal)
    return ZeroSimplifyingReport(True)


def is_zero_simplifying(m):
    return zero_simplifying_report(m).holds


def is_fundamental(m):
    """Only idempotents centralise E(S); cross-checked against a faithful unit action."""
    idem = list(m.enumerate_idempotents())
    direct = True
    for s in m.enumerate_all():
        if m.is_idempotent(s):
            continue
        if all(core.commutes(m, s, e) for e in idem):
            direct = False
            break
    faithful = all(
        m.eq(g, m.one) or any(not m.eq(core.conjugate(m, g, e), e) for e in idem)
        for g in m.enumerate_units()
    )
    if direct != faithful:
        raise ConsistencyError(f"fundamental ({direct}) vs faithful action ({faithful}) on {m.name}")
    return direct


# -- finite Stone duality ----------------------------------------------------

@dataclass(frozen=True)
class Ultrafilter:
    """Principal ultrafilter ``↑{atom}`` on E(I_n)."""

    n: int
    atom: int

    def contains(self, e):
        return self.atom in e

    def __str__(self):
        return f"↑{{{self.atom}}}"


class Arrow(NamedTuple):
    source: int
    target: int

    def element(self, n):
        return PartialPerm.from_pairs(n, [(self.source, self.target)])

    def __str__(self):
        return f"{self.source}->{self.target}"


def structure_space(m):
    return [Ultrafilter(m.n, i) for i in range(m.n)]


def compose_arrows(a, b):
    """``a · b``, defined when ``d(a) = r(b)``."""
    if a.source != b.target:
        return None
    return Arrow(b.source, a.target)


def germ_groupoid(m):
    arrows = [Arrow(i, j) for i in range(m.n) for j in range(m.n)]
    table = {}
    for a in arrows:
        for b in arrows:
            c = compose_arrows(a, b)
            if c is not None:
                table[(a, b)] = c
    return arrows, table


def act_on_ultrafilter(g, F):
    """``g F g^-1`` for a permutation ``g``."""
    return Ultrafilter(F.n, g(F.atom))


# -- finite witnesses --------------------------------------------------------

def nonzero_idempotents(m):
    return [e for e in m.enumerate_idempotents() if not core.is_zero(m, e)]


def orthogonal_conjugate_witness(m, g, below=None):
    """Nonzero idempotent ``f`` (under ``below``) with ``f ⊥ g f g^-1``."""
    for f in nonzero_idempotents(m):
        if below is not None and not core.natural_leq(m, f, below):
            continue
        if core.is_zero(m, m.mul(f, core.conjugate(m, g, f))):
            return f
    return None


def orthogonal_triple_witness(m, F, g, h):
    """``e ∈ F`` with ``{e, g e g^-1, h e h^-1}`` pairwise orthogonal."""
    for e in nonzero_idempotents(m):
        if not F.contains(m.extract(e)):
            continue
        trio = [e, core.conjugate(m, g, e), core.conjugate(m, h, e)]
        if all(
            core.is_zero(m, m.mul(trio[i], trio[j])) for i in range(3) for j in range(i + 1, 3)
        ):
            return e
    return None


def moved_idempotent_below(m, g, e):
    """Idempotent ``f <= e`` with ``g f g^-1 != f``."""
    for f in m.enumerate_idempotents():
        if core.natural_leq(m, f, e) and not m.eq(core.conjugate(m, g, f), f):
            return f
    return None


def moved_atoms(g):
    return FiniteSet(g.n, (x for x in range(g.n) if g(x) != x))


# -- multiplication tables ---------------------------------------------------

@lru_cache(maxsize=None)
def element_index(n):
    elems = tuple(enumerate_partial_perms(n))
    return elems, {s: i for i, s in enumerate(elems)}


def _codes(arr, n):
    weights = (n + 1) ** np.arange(n)
    return arr[..., :n] @ weights


@lru_cache(maxsize=None)
def multiplication_table(n):
    """``table[i, j]`` is the index of ``elems[i] * elems[j]`` in I_n."""
    elems, _ = element_index(n)
    arr = np.full((len(elems), n + 1), n, dtype=np.int64)
    for i, s in enumerate(elems):
        for x, y in s.pairs():
            arr[i, x] = y
    lookup = np.full((n + 1) ** n, -1, dtype=np.int64)
    lookup[_codes(arr, n)] = np.arange(len(elems))
    table = np.empty((len(elems), len(elems)), dtype=np.int32)
    for i in range(len(elems)):
        table[i] = lookup[_codes(arr[i][arr], n)]
    return table
