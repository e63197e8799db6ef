"""Slow, independent reference implementations used only by the tests.

Vertices are frozensets of 1-based elements here, not masks, so these share
no code path with the package.
"""

import cmath
import itertools
from fractions import Fraction


def subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def to_set(mask):
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def to_mask(s):
    return sum(1 << (i - 1) for i in s)


def set_outmap(table):
    """Mask table -> dict frozenset -> frozenset."""
    return {to_set(v): to_set(out) for v, out in enumerate(table)}


def is_uso_by_sets(table, n):
    s = set_outmap(table)
    ground = frozenset(range(1, n + 1))
    for v in s:
        for lam in ground:
            w = v ^ {lam}
            if (lam in s[v]) == (lam in s[w]):
                return False
    for lo in subsets(ground):
        for extra in subsets(ground - lo):
            carr = extra
            sinks = [lo | part for part in subsets(carr) if not (s[lo | part] & carr)]
            if len(sinks) != 1:
                return False
    return True


def all_orientations_by_sets(n):
    """Every orientation of the n-cube as a mask table, built edge by edge."""
    ground = range(1, n + 1)
    edges = [(v, lam) for v in subsets(ground) for lam in ground if lam not in v]
    for choice in itertools.product((0, 1), repeat=len(edges)):
        out = {v: set() for v in subsets(ground)}
        for (v, lam), up in zip(edges, choice):
            if up:
                out[v].add(lam)
            else:
                out[v | {lam}].add(lam)
        table = [0] * (1 << n)
        for v, o in out.items():
            table[to_mask(v)] = to_mask(o)
        yield table


def orbit(table, start=0):
    seq = [start]
    v = table[start]
    while v != start:
        seq.append(v)
        v = table[v]
    return seq


def iterate(table, k, u):
    for _ in range(k):
        u = table[u]
    return u


def period_finding_distribution(l, t):
    """Outcome probabilities by summing amplitudes term by term over each value class."""
    size = 2 ** t
    probs = []
    for j in range(size):
        total = 0.0
        for k0 in range(l):
            amp = sum(cmath.exp(2j * cmath.pi * j * k / size) for k in range(k0, size, l))
            total += abs(amp) ** 2
        probs.append(total / size ** 2)
    return probs


def legendre_denominators(j, t, bound):
    """Denominators q <= bound of reduced p/q with |j/2^t - p/q| < 1/(2 q^2); all must be convergents."""
    x = Fraction(j, 2 ** t)
    out = set()
    for q in range(1, bound + 1):
        p = round(x * q)
        f = Fraction(p, q)
        if abs(x - f) < Fraction(1, 2 * f.denominator ** 2):
            out.add(f.denominator)
    return out
