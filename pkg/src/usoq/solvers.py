"""Classical baselines with exact query accounting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cube import Subcube, contains, full_cube, split
from .orientation import Outmap
from .period import sink_via_period
from .verifier import decide

Decision = Callable[[Subcube], bool]


class InconsistentDecision(RuntimeError):
    pass


class StepCapExceeded(RuntimeError):
    pass


@dataclass
class QueryCounter:
    count: int = 0


class CountingOutmap:
    """Pass-through wrapper that counts ``eval`` calls."""

    def __init__(self, m: Outmap, counter: QueryCounter | None = None):
        self.m = m
        self.n = m.n
        self.counter = counter if counter is not None else QueryCounter()

    def eval(self, v: int) -> int:
        self.counter.count += 1
        return self.m.eval(v)

    __call__ = eval

    @property
    def count(self) -> int:
        return self.counter.count


def with_query_counting(m: Outmap) -> CountingOutmap:
    return CountingOutmap(m)


def counted_scan(oracle: CountingOutmap) -> int:
    """Linear scan for the sink through a counting oracle; stops at the first hit."""
    for v in range(1 << oracle.n):
        if oracle.eval(v) == 0:
            return v
    raise InconsistentDecision("no vertex has an empty outmap")


def brute_decision(m: Outmap) -> Decision:
    return lambda c: decide(m, c)


def period_decision(m: Outmap) -> Decision:
    """Answer membership from the sink found once via the orbit period."""
    sink = sink_via_period(m)
    return lambda c: contains(c, sink)


@dataclass
class FacetSearch:
    sink: int
    decision_calls: int


def solve_by_facet_decision(m: Outmap, decision: Decision) -> FacetSearch:
    """Halve the cube along each direction using one decision call per direction."""
    face = full_cube(m.n)
    calls = 0
    for direction in range(1, m.n + 1):
        lower, upper = split(face, direction)
        calls += 1
        face = lower if decision(lower) else upper
    sink = face.lo
    if m.eval(sink) != 0:
        raise InconsistentDecision(f"decision answers led to {sink}, which is not a sink")
    return FacetSearch(sink, calls)


def random_edge_walk(m: Outmap, start: int, seed: int) -> tuple[int, QueryCounter]:
    """Follow a uniformly random outgoing edge until reaching a sink."""
    rng = np.random.default_rng(seed)
    oracle = CountingOutmap(m)
    cap = 4 ** m.n
    v = start
    for _ in range(cap):
        out = oracle.eval(v)
        if out == 0:
            return v, oracle.counter
        choices = [1 << k for k in range(m.n) if out >> k & 1]
        v ^= choices[int(rng.integers(len(choices)))]
    raise StepCapExceeded(f"no sink reached after {cap} steps")
