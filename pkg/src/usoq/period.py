"""The outmap of a USO as a permutation of the vertex set.

Powering goes through a full cycle decomposition, i.e. an O(2**n)
precompute. This is the desk-scale stand-in for an efficient k-th power
oracle; no sub-exponential powering procedure is known, so nothing here
scales beyond dense tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orientation import Outmap


class NotBijectiveError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodResult:
    start: int
    orbit: tuple[int, ...]
    period: int

    @property
    def sink_candidate(self) -> int:
        """``s^(l-1)(start)``; the global sink when ``start`` is the empty set."""
        return self.orbit[self.period - 1]


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[np.ndarray, ...]
    cycle_id: np.ndarray
    position: np.ndarray

    def length_of(self, v: int) -> int:
        return self.cycles[self.cycle_id[v]].size

    def power(self, k: int, u: int) -> int:
        cyc = self.cycles[self.cycle_id[u]]
        return int(cyc[(int(self.position[u]) + k) % cyc.size])


def cycle_decomposition(m: Outmap) -> CycleDecomposition:
    """Disjoint cycles of the outmap, cached on the (immutable) outmap."""
    cached = m._cache.get("cycles")
    if cached is not None:
        return cached
    table = m.table.tolist()
    size = len(table)
    cycle_id = np.full(size, -1, dtype=np.int64)
    position = np.zeros(size, dtype=np.int64)
    cycles = []
    for start in range(size):
        if cycle_id[start] >= 0:
            continue
        cid = len(cycles)
        orbit = [start]
        cycle_id[start] = cid
        v = table[start]
        while v != start:
            if cycle_id[v] >= 0:
                raise NotBijectiveError(f"vertex {v} is reached twice; the outmap is not a bijection")
            cycle_id[v] = cid
            position[v] = len(orbit)
            orbit.append(v)
            v = table[v]
        cycles.append(np.array(orbit, dtype=np.int64))
    result = CycleDecomposition(tuple(cycles), cycle_id, position)
    m._cache["cycles"] = result
    return result


def orbit_period(m: Outmap, start: int = 0) -> PeriodResult:
    """Walk ``start, s(start), ...`` until it returns to ``start``."""
    table = m.table
    size = table.size
    orbit = [start]
    v = int(table[start])
    while v != start:
        orbit.append(v)
        if len(orbit) > size:
            raise NotBijectiveError(f"orbit of {start} never returns; the outmap is not a bijection")
        v = int(table[v])
    if len(set(orbit)) != len(orbit):
        raise NotBijectiveError(f"orbit of {start} repeats before closing")
    return PeriodResult(start, tuple(orbit), len(orbit))


def power(m: Outmap, k: int, u: int) -> int:
    """``s^k(u)`` for arbitrary non-negative (big) integers ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return cycle_decomposition(m).power(k, u)


class PowerOracle:
    """Classical model of ``|k, u, v> -> |k, u, v ^ s^k(u)>`` with a call counter."""

    def __init__(self, m: Outmap):
        self.m = m
        self.calls = 0
        self._cd = cycle_decomposition(m)

    def __call__(self, k: int, u: int = 0) -> int:
        self.calls += 1
        return self._cd.power(k, u)

    def apply(self, k: int, u: int, v: int) -> tuple[int, int, int]:
        return k, u, v ^ self(k, u)

    def orbit_values(self, count: int, u: int = 0) -> np.ndarray:
        """``s^k(u)`` for ``k = 0 .. count-1`` in one superposed query."""
        self.calls += 1
        cd = self._cd
        cyc = cd.cycles[cd.cycle_id[u]]
        ks = (np.arange(count, dtype=np.int64) + int(cd.position[u])) % cyc.size
        return cyc[ks]


def sink_via_period(m: Outmap) -> int:
    """Global sink as ``s^(l-1)(empty)``, ``l`` the period of the empty set."""
    l = orbit_period(m, 0).period
    return power(m, l - 1, 0)


def naive_walk_count(oracle) -> int:
    """Queries spent evaluating ``s(empty), s^2(empty), ...`` until empty recurs.

    ``oracle`` is anything with an ``eval`` method (an :class:`Outmap` or a
    counting wrapper).
    """
    limit = 1 << oracle.n
    count = 1
    v = oracle.eval(0)
    while v != 0:
        if count >= limit:
            raise NotBijectiveError("walk from the empty set does not return; not a bijection")
        v = oracle.eval(v)
        count += 1
    return count
