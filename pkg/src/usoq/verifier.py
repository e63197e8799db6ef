"""Definitional checks for unique sink orientations.

Everything here is brute force by design: these functions are the ground
truth the faster routines in :mod:`usoq.period` and :mod:`usoq.qpf` are
checked against.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .cube import Subcube, check_dim, contains, full_mask
from .orientation import Outmap, is_orientation

VERIFY_CAP = 12
ENUM_CAP = 3


class NotUSOError(ValueError):
    """Raised when an operation that relies on the unique sink promise gets a table that breaks it."""


def subcube_sinks(m: Outmap, c: Subcube) -> list[int]:
    """Vertices of ``c`` with no outgoing edge inside ``c``."""
    carr = c.carrier
    return [w for w in c.vertices() if m.eval(w) & carr == 0]


def _subcube_sink_counts_ok(m: Outmap) -> bool:
    # For each carrier, bucket every vertex by its face (v & ~carrier) and
    # count sinks per bucket; each of the faces must hold exactly one.
    size = m.table.size
    v = np.arange(size)
    for carr in range(size):
        is_sink = (m.table & carr) == 0
        counts = np.bincount(v & ~carr, weights=is_sink, minlength=size)
        faces = v[(v & carr) == 0]
        if np.any(counts[faces] != 1):
            return False
    return True


def is_uso(m: Outmap) -> bool:
    """True iff ``m`` is an orientation and each of the 3**n faces has one sink."""
    check_dim(m.n, VERIFY_CAP)
    return is_orientation(m) and _subcube_sink_counts_ok(m)


def is_uso_pairwise(m: Outmap) -> bool:
    """Pairwise criterion: ``(u ^ v) & (s(u) ^ s(v))`` is non-empty for u != v.

    An independent validator only; :func:`is_uso` is the reference.
    """
    check_dim(m.n, VERIFY_CAP)
    if not is_orientation(m):
        return False
    t = m.table
    v = np.arange(t.size)
    for d in range(1, t.size):
        if np.any((t ^ t[v ^ d]) & d == 0):
            return False
    return True


def is_bijection(m: Outmap) -> bool:
    return np.unique(m.table).size == m.table.size


def global_sink(m: Outmap) -> int:
    """Linear scan for the vertex with empty outmap (2**n queries)."""
    sinks = np.flatnonzero(m.table == 0)
    if sinks.size != 1:
        raise NotUSOError(f"expected exactly one global sink, found {sinks.size}")
    return int(sinks[0])


def global_source(m: Outmap) -> int:
    sources = np.flatnonzero(m.table == full_mask(m.n))
    if sources.size != 1:
        raise NotUSOError(f"expected exactly one global source, found {sources.size}")
    return int(sources[0])


def decide(m: Outmap, c: Subcube) -> bool:
    """Does the global sink of ``m`` lie in the face ``c``?"""
    return contains(c, global_sink(m))


def _edge_list(n: int) -> list[tuple[int, int]]:
    return [(v, 1 << k) for k in range(n) for v in range(1 << n) if not v & (1 << k)]


def orientation_from_bits(n: int, bits: int) -> Outmap:
    """Orientation whose i-th edge points upward iff bit i of ``bits`` is set.

    Edges are ordered by direction, then by lower endpoint.
    """
    table = [0] * (1 << n)
    for i, (v, b) in enumerate(_edge_list(n)):
        if bits >> i & 1:
            table[v] |= b
        else:
            table[v | b] |= b
    return Outmap(n, np.array(table, dtype=np.int64))


def enumerate_orientations(n: int) -> Iterator[Outmap]:
    check_dim(n, ENUM_CAP)
    n_edges = n << (n - 1) if n else 0
    for bits in range(1 << n_edges):
        yield orientation_from_bits(n, bits)


def enumerate_usos(n: int) -> Iterator[Outmap]:
    """Every USO of the n-cube (n <= 3), by filtering all orientations."""
    check_dim(n, ENUM_CAP)
    for m in enumerate_orientations(n):
        if _subcube_sink_counts_ok(m):
            yield m
