"""The Cuntz inverse monoid C_n.

Elements are prefix-substitution partial bijections of n-ary Cantor space,
``{(u_i, v_i)}`` meaning ``u_i x -> v_i x``.  The units form Thompson's
group V_n.  Points of Cantor space are restricted to eventually periodic
words ``u v^ω``; that class is closed under every element's action.
"""
import re
from collections import defaultdict, deque
from itertools import product

from . import core
from .boolean import (
    Clopen,
    check_word,
    comparable,
    equalize,
    format_word,
    is_antichain,
    is_prefix,
    parse_word,
)
from .errors import (
    ArityMismatch,
    ComparableWords,
    GermsNotComposable,
    NotAUnit,
    NotExtendable,
    NotInjective,
    PointOutsideDomain,
    SearchExhausted,
)


def _reduce_pairs(arity, pairs):
    """Merge complete sibling families ``{(u a, v a) : a < n}`` to fixpoint."""
    m = dict(pairs)
    while True:
        families = defaultdict(list)
        for u, v in m.items():
            if u and v and u[-1] == v[-1]:
                families[(u[:-1], v[:-1])].append(u)
        merged = False
        for (pu, pv), kids in families.items():
            if len(kids) == arity:
                for k in kids:
                    del m[k]
                m[pu] = pv
                merged = True
        if not merged:
            return tuple(sorted(m.items()))


class PrefixBijection:
    """Element of C_n in canonical form (sorted, fully reduced pairs)."""

    __slots__ = ("arity", "pairs")

    def __init__(self, arity, pairs=()):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        pairs = {(check_word(u, arity), check_word(v, arity)) for u, v in pairs}
        if not is_antichain([u for u, _ in pairs]):
            raise NotInjective("domain words overlap: not a function")
        if not is_antichain([v for _, v in pairs]):
            raise NotInjective("codomain words overlap: not injective")
        self.arity = arity
        self.pairs = _reduce_pairs(arity, pairs)

    @classmethod
    def _trusted(cls, arity, pairs):
        obj = object.__new__(cls)
        obj.arity = arity
        obj.pairs = _reduce_pairs(arity, pairs)
        return obj

    @classmethod
    def zero(cls, arity):
        return cls._trusted(arity, ())

    @classmethod
    def identity(cls, arity):
        return cls._trusted(arity, (((), ()),))

    @classmethod
    def idempotent(cls, clopen):
        return cls._trusted(clopen.arity, [(w, w) for w in clopen.words])

    def __eq__(self, other):
        return (
            isinstance(other, PrefixBijection)
            and self.arity == other.arity
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((PrefixBijection, self.arity, self.pairs))

    def __repr__(self):
        return f"PrefixBijection({self.arity}, {self})"

    def __str__(self):
        if not self.pairs:
            return "0"
        if self.pairs == (((), ()),):
            return "1"
        return "{" + ", ".join(f"{format_word(u)}->{format_word(v)}" for u, v in self.pairs) + "}"

    def __mul__(self, other):
        return compose(self, other)

    def __len__(self):
        return len(self.pairs)

    @property
    def domain(self):
        return Clopen(self.arity, [u for u, _ in self.pairs])

    @property
    def codomain(self):
        return Clopen(self.arity, [v for _, v in self.pairs])

    def to_json(self):
        return {
            "arity": self.arity,
            "pairs": [["".join(map(str, u)), "".join(map(str, v))] for u, v in self.pairs],
        }

    @classmethod
    def from_json(cls, data):
        n = data["arity"]
        return cls(n, [(parse_word(u, n), parse_word(v, n)) for u, v in data["pairs"]])

    @classmethod
    def parse(cls, text, arity):
        text = text.strip()
        if text == "0":
            return cls.zero(arity)
        if text == "1":
            return cls.identity(arity)
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"element literal must be braced: {text!r}")
        body = text[1:-1].strip()
        pairs = []
        for item in filter(None, (p.strip() for p in body.split(","))):
            if "->" not in item:
                raise ValueError(f"expected 'u->v', got {item!r}")
            u, v = item.split("->", 1)
            pairs.append((parse_word(u, arity), parse_word(v, arity)))
        return cls(arity, pairs)


def _check(s, t):
    if s.arity != t.arity:
        raise ArityMismatch(f"arities {s.arity} and {t.arity} differ")


def compose(s, t):
    """``s ∘ t``: apply ``t`` first."""
    _check(s, t)
    out = []
    for u, v in t.pairs:
        for p, q in s.pairs:
            if is_prefix(p, v):
                out.append((u, q + v[len(p):]))
            elif is_prefix(v, p):
                out.append((u + p[len(v):], q))
    return PrefixBijection._trusted(s.arity, out)


def inverse(s):
    return PrefixBijection._trusted(s.arity, [(v, u) for u, v in s.pairs])


def phi_raw(s):
    # a pair u -> v with u != v fixes no cylinder: disjoint cylinders when
    # incomparable, a single fixed point otherwise
    return Clopen(s.arity, [u for u, v in s.pairs if u == v])


def is_unit(s):
    return s.domain.is_one() and s.codomain.is_one()


def swap_involution(u, v, arity):
    u, v = check_word(u, arity), check_word(v, arity)
    if comparable(u, v):
        raise ComparableWords(f"{format_word(u)} and {format_word(v)} are comparable")
    rest = Clopen(arity, [u, v]).complement()
    return PrefixBijection(arity, [(u, v), (v, u)] + [(w, w) for w in rest.words])


def unit_extension(u, v, arity):
    """A unit above ``{(u, v)}``, built by equalizing the two complements."""
    u, v = check_word(u, arity), check_word(v, arity)
    cu = Clopen.cylinder(arity, u).complement()
    cv = Clopen.cylinder(arity, v).complement()
    if cu.is_zero() and cv.is_zero():
        return PrefixBijection.identity(arity)
    if cu.is_zero() or cv.is_zero():
        raise NotExtendable(
            f"{format_word(u)}->{format_word(v)} maps a whole space onto a proper part"
        )
    xs, ys = equalize(cu, cv)
    return PrefixBijection(arity, [(u, v)] + list(zip(xs, ys)))


# -- points and germs -------------------------------------------------------

_POINT_RE = re.compile(r"^\s*([0-9]*|e|ε)\s*\(\s*([0-9]+)\s*\)\s*\*\s*$")


class Point:
    """Eventually periodic point ``preperiod · period^ω`` in canonical form."""

    __slots__ = ("arity", "preperiod", "period")

    def __init__(self, arity, preperiod, period):
        pre = check_word(preperiod, arity)
        per = check_word(period, arity)
        if not per:
            raise ValueError("period must be nonempty")
        k = len(per)
        for d in range(1, k + 1):
            if k % d == 0 and per == per[:d] * (k // d):
                per = per[:d]
                break
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1:] + per[:-1]
        self.arity = arity
        self.preperiod = pre
        self.period = per

    @classmethod
    def parse(cls, text, arity):
        m = _POINT_RE.match(text)
        if not m:
            raise ValueError(f"bad point literal {text!r}")
        return cls(arity, parse_word(m.group(1), arity), parse_word(m.group(2), arity))

    def __eq__(self, other):
        return isinstance(other, Point) and (self.arity, self.preperiod, self.period) == (
            other.arity,
            other.preperiod,
            other.period,
        )

    def __hash__(self):
        return hash((Point, self.arity, self.preperiod, self.period))

    def __str__(self):
        pre = "".join(map(str, self.preperiod))
        return f"{pre}({''.join(map(str, self.period))})*"

    def __repr__(self):
        return f"Point({self.arity}, {self})"

    def to_json(self):
        return {
            "arity": self.arity,
            "preperiod": "".join(map(str, self.preperiod)),
            "period": "".join(map(str, self.period)),
        }

    def prefix(self, k):
        out = list(self.preperiod[:k])
        i = 0
        while len(out) < k:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def startswith(self, word):
        return self.prefix(len(word)) == tuple(word)

    def drop(self, k):
        if k <= len(self.preperiod):
            return Point(self.arity, self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return Point(self.arity, (), self.period[r:] + self.period[:r])

    def prepend(self, word):
        return Point(self.arity, tuple(word) + self.preperiod, self.period)

    def in_clopen(self, e):
        return any(self.startswith(w) for w in e.words)


def _matching_pair(s, x):
    for u, v in s.pairs:
        if x.startswith(u):
            return u, v
    raise PointOutsideDomain(f"{x} is not in the domain of {s}")


def act(s, x):
    u, v = _matching_pair(s, x)
    return x.drop(len(u)).prepend(v)


class Germ:
    """Germ of an element at a point of its domain."""

    __slots__ = ("element", "base", "_key")

    def __init__(self, element, base):
        u, v = _matching_pair(element, base)
        while u and v and u[-1] == v[-1]:
            u, v = u[:-1], v[:-1]
        self.element = element
        self.base = base
        self._key = (u, v)

    def __eq__(self, other):
        return isinstance(other, Germ) and (self.base, self._key) == (other.base, other._key)

    def __hash__(self):
        return hash((Germ, self.base, self._key))

    def __repr__(self):
        return f"Germ({self.element}, {self.base})"

    @property
    def source(self):
        return self.base

    @property
    def target(self):
        return act(self.element, self.base)

    def inverse(self):
        return Germ(inverse(self.element), self.target)


def germ_compose(a, b):
    if a.source != b.target:
        raise GermsNotComposable(f"d(a) = {a.source} but r(b) = {b.target}")
    return Germ(compose(a.element, b.element), b.base)


def moved_point_in(g, e, depth_cap=32):
    """An eventually periodic point of ``e`` moved by the unit ``g``, or None."""
    if not is_unit(g):
        raise NotAUnit(f"{g} is not a unit")
    region = e.intersect(phi_raw(g).complement())
    if region.is_zero():
        return None
    n = g.arity
    for w in region.words:
        for depth in range(depth_cap + 1):
            for tail in product(range(n), repeat=depth):
                for a in range(n):
                    x = Point(n, w + tail, (a,))
                    if act(g, x) != x:
                        return x
    raise SearchExhausted(f"no moved point found in {region} within depth {depth_cap}")


def noncommuting_idempotent(s, depth=4):
    """A cylinder idempotent ``e`` with ``s e != e s``, or None up to ``depth``."""
    n = s.arity
    for k in range(depth + 1):
        for w in product(range(n), repeat=k):
            e = PrefixBijection.idempotent(Clopen.cylinder(n, w))
            if compose(s, e) != compose(e, s):
                return e
    return None


# -- the model -------------------------------------------------------------

class CuntzModel(core.Model):
    """C_n packaged for the generic calculus."""

    def __init__(self, arity=2):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        self.arity = arity
        self.name = f"cuntz{arity}"
        self._zero = PrefixBijection.zero(arity)
        self._one = PrefixBijection.identity(arity)

    def __repr__(self):
        return f"CuntzModel({self.arity})"

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def mul(self, s, t):
        return compose(s, t)

    def inv(self, s):
        return inverse(s)

    def is_idempotent(self, s):
        return all(u == v for u, v in s.pairs)

    def phi_raw(self, s):
        return phi_raw(s)

    def embed(self, b):
        return PrefixBijection.idempotent(b)

    def extract(self, e):
        return Clopen(self.arity, [u for u, _ in e.pairs])

    def join_raw(self, parts):
        pairs = {p for s in parts for p in s.pairs}
        domains = {u for u, _ in pairs}
        # compatible parts agree on overlaps, so a pair under another is redundant
        kept = [(u, v) for u, v in pairs if not any(u[:i] in domains for i in range(len(u)))]
        return PrefixBijection(self.arity, kept)

    def native_meet(self, s, t):
        out = []
        for u, v in s.pairs:
            for x, y in t.pairs:
                if is_prefix(u, x):
                    if v + x[len(u):] == y:
                        out.append((x, y))
                elif is_prefix(x, u):
                    if y + u[len(x):] == v:
                        out.append((u, v))
        return PrefixBijection._trusted(self.arity, out)

    def basic_map(self, p, q):
        (u,), (v,) = p.words, q.words
        return PrefixBijection._trusted(self.arity, [(u, v)])

    def refine(self, p):
        (w,) = p.words
        return [Clopen.cylinder(self.arity, w + (a,)) for a in range(self.arity)]

    def parse(self, text):
        return PrefixBijection.parse(text, self.arity)

    def parse_idempotent(self, text):
        return Clopen.parse(text, self.arity)

    def parse_point(self, text):
        return Point.parse(text, self.arity)


# -- random sampling ---------------------------------------------------------

def random_word(rng, arity, max_depth, min_depth=0):
    k = rng.randint(min_depth, max_depth)
    return tuple(rng.randrange(arity) for _ in range(k))


def random_element(rng, arity=2, max_pairs=4, max_depth=5):
    """Join of up to ``max_pairs`` random word pairs, kept injective."""
    want = rng.randint(1, max_pairs)
    pairs = []
    for _ in range(50 * want):
        if len(pairs) == want:
            break
        u = random_word(rng, arity, max_depth)
        v = random_word(rng, arity, max_depth)
        if all(not comparable(u, x) for x, _ in pairs) and all(
            not comparable(v, y) for _, y in pairs
        ):
            pairs.append((u, v))
    return PrefixBijection(arity, pairs)


def random_clopen(rng, arity=2, max_words=4, max_depth=5):
    """Nonzero clopen: union of up to ``max_words`` random cylinders."""
    k = rng.randint(1, max_words)
    return Clopen(arity, [random_word(rng, arity, max_depth) for _ in range(k)])


def random_incomparable(rng, arity, count, max_depth=4):
    while True:
        words = [random_word(rng, arity, max_depth, min_depth=1) for _ in range(count)]
        if all(not comparable(a, b) for i, a in enumerate(words) for b in words[i + 1:]):
            return words


def random_special_involution(rng, arity=2, max_depth=4):
    u, v = random_incomparable(rng, arity, 2, max_depth)
    return swap_involution(u, v, arity)


def random_special_three_cycle(rng, arity=2, max_depth=4):
    m = CuntzModel(arity)
    x, y, z = random_incomparable(rng, arity, 3, max_depth)
    a = PrefixBijection(arity, [(x, y)])
    b = PrefixBijection(arity, [(y, z)])
    return core.special_three_cycle(m, b, a).g


def random_unit(rng, arity=2, max_factors=6, max_depth=4):
    """Product of up to ``max_factors`` special involutions and 3-cycles."""
    g = PrefixBijection.identity(arity)
    for _ in range(rng.randint(1, max_factors)):
        if rng.random() < 0.5:
            f = random_special_involution(rng, arity, max_depth)
        else:
            f = random_special_three_cycle(rng, arity, max_depth)
        g = compose(g, f)
    return g


def random_involution(rng, arity=2, max_depth=4):
    """Conjugate of a special involution by a random unit."""
    t = random_special_involution(rng, arity, max_depth)
    g = random_unit(rng, arity, max_factors=3, max_depth=3)
    return compose(compose(g, t), inverse(g))


def canonical_points(arity, max_length):
    """All canonical points with ``len(preperiod) + len(period) <= max_length``."""
    seen = []
    found = set()
    for total in range(1, max_length + 1):
        for plen in range(1, total + 1):
            for pre in product(range(arity), repeat=total - plen):
                for per in product(range(arity), repeat=plen):
                    x = Point(arity, pre, per)
                    if x not in found:
                        found.add(x)
                        seen.append(x)
    return seen


def bfs_cylinders(e, depth_cap=32):
    """Cylinders inside ``e`` in breadth-first order by depth."""
    queue = deque(e.words)
    while queue:
        w = queue.popleft()
        yield w
        if len(w) < depth_cap:
            queue.extend(w + (a,) for a in range(e.arity))
