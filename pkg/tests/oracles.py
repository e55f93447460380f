"""Independent reference computations used to check the library.

None of these call the code paths they check: clopens are compared as
membership vectors over all words of a fixed length, fixed sets through the
pointwise action on several points per cylinder, and finite meets by graph
containment.
"""
from itertools import product
from math import comb, factorial

from tarski.cuntz import Point, act
from tarski.errors import PointOutsideDomain


def words_of_length(n, k):
    return list(product(range(n), repeat=k))


def truth_table(words, n, k):
    """Membership of every length-``k`` word in the union of cylinders ``words``."""
    return tuple(
        any(w[: len(u)] == u for u in words) for w in words_of_length(n, k)
    )


def table_from_bits(bits, n, k):
    """Words of length ``k`` selected by a membership vector."""
    return [w for w, b in zip(words_of_length(n, k), bits) if b]


def symmetric_size(n):
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def _probe_points(n, w):
    tails = [(0,), (1,), (0, 1)] if n == 2 else [(a,) for a in range(3)]
    return [Point(n, w, t) for t in tails]


def fixed_table(s, k):
    """Cylinders of length ``k`` fixed pointwise by ``s``.

    A substitution ``u -> v`` with ``u != v`` fixes at most one point, so a
    cylinder on which three distinct probe points are fixed is fixed outright.
    """
    n = s.arity
    out = []
    for w in words_of_length(n, k):
        try:
            out.append(all(act(s, x) == x for x in _probe_points(n, w)))
        except PointOutsideDomain:
            out.append(False)
    return tuple(out)


def graph(s):
    return frozenset(s.pairs())


def finite_glb(elements, s, t):
    """Greatest lower bound in I_n by exhaustive search over graphs."""
    below = [x for x in elements if graph(x) <= graph(s) and graph(x) <= graph(t)]
    best = max(below, key=lambda x: len(graph(x)))
    assert all(graph(x) <= graph(best) for x in below)
    return best
