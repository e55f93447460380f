"""Boolean algebras of idempotents.

Two concrete engines share the :class:`BooleanElement` interface:

* :class:`Clopen` -- a clopen subset of n-ary Cantor space, stored as a
  fully reduced, sorted antichain of cylinder words.  Structural equality is
  semantic equality.
* :class:`FiniteSet` -- a subset of ``{0..n-1}`` stored as a bitset.

:class:`ProductSet` pairs two of them for product models.

Words are tuples of ints; the empty tuple is the whole space.
"""
from abc import ABC, abstractmethod
from collections import Counter

from .errors import (
    ArityMismatch,
    AtomObstruction,
    IncompatibleCounts,
    InvalidLetter,
    ZeroClopen,
    ZeroIdempotent,
)

EPSILON = ("e", "ε")


# -- words -------------------------------------------------------------------

def check_word(word, arity):
    word = tuple(word)
    for letter in word:
        if not isinstance(letter, int) or not 0 <= letter < arity:
            raise InvalidLetter(f"letter {letter!r} not in alphabet of arity {arity}")
    return word


def parse_word(text, arity):
    """``"01"`` -> ``(0, 1)``; ``"e"``, ``"ε"`` and ``""`` are the empty word."""
    text = text.strip()
    if text in EPSILON or text == "":
        return ()
    if arity > 10:
        raise InvalidLetter("text words only support arity <= 10")
    try:
        word = tuple(int(c) for c in text)
    except ValueError:
        raise InvalidLetter(f"bad word {text!r}") from None
    return check_word(word, arity)


def format_word(word):
    return "".join(map(str, word)) if word else "e"


def is_prefix(u, v):
    return len(u) <= len(v) and v[: len(u)] == u


def comparable(u, v):
    return is_prefix(u, v) or is_prefix(v, u)


def is_antichain(words):
    """No word is a prefix of another (checking sorted neighbours suffices)."""
    ws = sorted(words)
    return all(not is_prefix(a, b) for a, b in zip(ws, ws[1:]))


def _absorb(words):
    kept = set()
    for w in sorted(set(words), key=len):
        if not any(w[:i] in kept for i in range(len(w) + 1)):
            kept.add(w)
    return kept


def _merge_siblings(arity, words):
    words = set(words)
    while True:
        counts = Counter(w[:-1] for w in words if w)
        full = [p for p, c in counts.items() if c == arity]
        if not full:
            return words
        for p in full:
            words.difference_update(p + (a,) for a in range(arity))
            words.add(p)


def canonical_words(arity, words):
    words = [check_word(w, arity) for w in words]
    return tuple(sorted(_merge_siblings(arity, _absorb(words))))


# -- interface ---------------------------------------------------------------

class BooleanElement(ABC):
    """Element of a Boolean algebra; immutable, hashable."""

    __slots__ = ()

    @abstractmethod
    def union(self, other): ...

    @abstractmethod
    def intersect(self, other): ...

    @abstractmethod
    def complement(self): ...

    @abstractmethod
    def is_zero(self): ...

    @abstractmethod
    def is_one(self): ...

    @abstractmethod
    def zero_like(self): ...

    @abstractmethod
    def basic_parts(self):
        """Disjoint cylinders/atoms whose join is ``self``."""

    @abstractmethod
    def split(self):
        """Two nonzero disjoint parts joining to ``self``."""

    def minus(self, other):
        return self.intersect(other.complement())

    def leq(self, other):
        # e <= f  iff  e f' = 0
        return self.minus(other).is_zero()

    def disjoint(self, other):
        return self.intersect(other).is_zero()

    __or__ = lambda self, other: self.union(other)
    __and__ = lambda self, other: self.intersect(other)
    __sub__ = lambda self, other: self.minus(other)
    __invert__ = lambda self: self.complement()
    __le__ = lambda self, other: self.leq(other)

    def __bool__(self):
        return not self.is_zero()


# -- Cantor space clopens ----------------------------------------------------

class Clopen(BooleanElement):
    """Clopen subset of n-ary Cantor space as a canonical cylinder union."""

    __slots__ = ("arity", "words")

    def __init__(self, arity, words=()):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        self.arity = arity
        self.words = canonical_words(arity, words)

    @classmethod
    def _trusted(cls, arity, words):
        obj = object.__new__(cls)
        obj.arity = arity
        obj.words = tuple(sorted(words))
        return obj

    @classmethod
    def zero(cls, arity):
        return cls._trusted(arity, ())

    @classmethod
    def one(cls, arity):
        return cls._trusted(arity, ((),))

    @classmethod
    def cylinder(cls, arity, word):
        return cls._trusted(arity, (check_word(word, arity),))

    @classmethod
    def parse(cls, text, arity):
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"clopen literal must be braced: {text!r}")
        body = text[1:-1].strip()
        items = [s for s in (p.strip() for p in body.split(",")) if s] if body else []
        return cls(arity, [parse_word(s, arity) for s in items])

    def __eq__(self, other):
        return (
            isinstance(other, Clopen)
            and self.arity == other.arity
            and self.words == other.words
        )

    def __hash__(self):
        return hash((Clopen, self.arity, self.words))

    def __repr__(self):
        return f"Clopen({self.arity}, {self})"

    def __str__(self):
        return "{" + ", ".join(format_word(w) for w in self.words) + "}"

    def to_json(self):
        return {"arity": self.arity, "words": ["".join(map(str, w)) for w in self.words]}

    @classmethod
    def from_json(cls, data):
        arity = data["arity"]
        return cls(arity, [parse_word(w, arity) for w in data["words"]])

    def _check(self, other):
        if not isinstance(other, Clopen) or other.arity != self.arity:
            raise ArityMismatch(f"cannot combine {self!r} with {other!r}")

    @property
    def depth(self):
        return max((len(w) for w in self.words), default=0)

    def is_zero(self):
        return not self.words

    def is_one(self):
        return self.words == ((),)

    def zero_like(self):
        return Clopen.zero(self.arity)

    def union(self, other):
        self._check(other)
        return Clopen(self.arity, self.words + other.words)

    def intersect(self, other):
        self._check(other)
        out = []
        for u in self.words:
            for v in other.words:
                if is_prefix(u, v):
                    out.append(v)
                elif is_prefix(v, u):
                    out.append(u)
        # both inputs are antichains, so the pieces are already disjoint
        return Clopen._trusted(self.arity, _merge_siblings(self.arity, out))

    def complement(self):
        n = self.arity

        def comp(words):
            if () in words:
                return []
            if not words:
                return [()]
            out = []
            for a in range(n):
                sub = [w[1:] for w in words if w[0] == a]
                out.extend((a,) + r for r in comp(sub))
            return out

        return Clopen._trusted(n, _merge_siblings(n, comp(list(self.words))))

    def contains_word(self, word):
        """Does the cylinder of ``word`` lie inside this set?"""
        return any(is_prefix(w, word) for w in self.words)

    def meets_word(self, word):
        """Does the cylinder of ``word`` meet this set?"""
        return any(comparable(w, word) for w in self.words)

    def basic_parts(self):
        return [Clopen._trusted(self.arity, (w,)) for w in self.words]

    def split(self):
        if self.is_zero():
            raise ZeroClopen("cannot split the empty clopen")
        first, rest = self.words[0], self.words[1:]
        left = Clopen._trusted(self.arity, (first + (0,),))
        right = Clopen(self.arity, rest + tuple(first + (a,) for a in range(1, self.arity)))
        return left, right


def _word_list(x, arity):
    if isinstance(x, Clopen):
        return list(x.words)
    words = [check_word(w, arity) for w in x]
    if not is_antichain(words):
        raise ValueError("cylinder decomposition must be an antichain")
    return sorted(set(words))


def equalize(a, b, arity=None):
    """Disjoint cylinder decompositions of ``a`` and ``b`` with equal length.

    ``a`` and ``b`` are clopens or explicit antichains of words.  The shorter
    list grows by splitting its lexicographically last word, which adds
    ``n - 1`` cylinders each time; counts must therefore agree mod ``n - 1``.
    """
    if arity is None:
        arity = a.arity if isinstance(a, Clopen) else b.arity
    xs, ys = _word_list(a, arity), _word_list(b, arity)
    if not xs or not ys:
        raise ZeroClopen("cannot equalize against the empty clopen")
    step = arity - 1
    if (len(xs) - len(ys)) % step:
        raise IncompatibleCounts(
            f"cylinder counts {len(xs)} and {len(ys)} differ mod {step}"
        )
    while len(xs) != len(ys):
        short = xs if len(xs) < len(ys) else ys
        last = short.pop()
        short.extend(last + (c,) for c in range(arity))
    return xs, ys


# -- finite powerset algebras ------------------------------------------------

class FiniteSet(BooleanElement):
    """Subset of ``{0..n-1}`` as a bitset."""

    __slots__ = ("n", "bits")

    def __init__(self, n, members=()):
        bits = 0
        for i in members:
            if not 0 <= i < n:
                raise InvalidLetter(f"{i} outside universe of size {n}")
            bits |= 1 << i
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, n, bits):
        obj = object.__new__(cls)
        obj.n = n
        obj.bits = bits & ((1 << n) - 1)
        return obj

    @classmethod
    def parse(cls, text, n):
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"set literal must be braced: {text!r}")
        items = [s.strip() for s in body[1:-1].split(",") if s.strip()]
        return cls(n, [int(s) for s in items])

    def __iter__(self):
        return (i for i in range(self.n) if self.bits >> i & 1)

    def __len__(self):
        return bin(self.bits).count("1")

    def __contains__(self, i):
        return bool(self.bits >> i & 1)

    def __eq__(self, other):
        return isinstance(other, FiniteSet) and (self.n, self.bits) == (other.n, other.bits)

    def __hash__(self):
        return hash((FiniteSet, self.n, self.bits))

    def __repr__(self):
        return f"FiniteSet({self.n}, {self})"

    def __str__(self):
        return "{" + ", ".join(map(str, self)) + "}"

    def to_json(self):
        return {"n": self.n, "members": list(self)}

    def _check(self, other):
        if not isinstance(other, FiniteSet) or other.n != self.n:
            raise ArityMismatch(f"cannot combine {self!r} with {other!r}")

    def is_zero(self):
        return self.bits == 0

    def is_one(self):
        return self.bits == (1 << self.n) - 1

    def zero_like(self):
        return FiniteSet.from_bits(self.n, 0)

    def union(self, other):
        self._check(other)
        return FiniteSet.from_bits(self.n, self.bits | other.bits)

    def intersect(self, other):
        self._check(other)
        return FiniteSet.from_bits(self.n, self.bits & other.bits)

    def complement(self):
        return FiniteSet.from_bits(self.n, ~self.bits)

    def basic_parts(self):
        return [FiniteSet.from_bits(self.n, 1 << i) for i in self]

    def split(self):
        atoms = self.basic_parts()
        if not atoms:
            raise ZeroIdempotent("cannot split the empty set")
        if len(atoms) == 1:
            raise AtomObstruction(f"{self} is an atom")
        return atoms[0], self.minus(atoms[0])


class ProductSet(BooleanElement):
    """Pair of Boolean elements with componentwise operations."""

    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __eq__(self, other):
        return isinstance(other, ProductSet) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self):
        return hash((ProductSet, self.left, self.right))

    def __repr__(self):
        return f"ProductSet({self.left!r}, {self.right!r})"

    def __str__(self):
        return f"({self.left}, {self.right})"

    def to_json(self):
        return [self.left.to_json(), self.right.to_json()]

    def _pair(self, other, op):
        return ProductSet(op(self.left, other.left), op(self.right, other.right))

    def union(self, other):
        return self._pair(other, lambda a, b: a.union(b))

    def intersect(self, other):
        return self._pair(other, lambda a, b: a.intersect(b))

    def complement(self):
        return ProductSet(self.left.complement(), self.right.complement())

    def is_zero(self):
        return self.left.is_zero() and self.right.is_zero()

    def is_one(self):
        return self.left.is_one() and self.right.is_one()

    def zero_like(self):
        return ProductSet(self.left.zero_like(), self.right.zero_like())

    def basic_parts(self):
        zl, zr = self.left.zero_like(), self.right.zero_like()
        return [ProductSet(p, zr) for p in self.left.basic_parts()] + [
            ProductSet(zl, p) for p in self.right.basic_parts()
        ]

    def split(self):
        if self.left.is_zero() and self.right.is_zero():
            raise ZeroIdempotent("cannot split zero")
        if self.left.is_zero():
            a, b = self.right.split()
            return ProductSet(self.left, a), ProductSet(self.left, b)
        if self.right.is_zero():
            a, b = self.left.split()
            return ProductSet(a, self.right), ProductSet(b, self.right)
        return ProductSet(self.left, self.right.zero_like()), ProductSet(
            self.left.zero_like(), self.right
        )
