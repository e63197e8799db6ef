"""Outmap tables and the constructions used to build unique sink orientations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from .cube import check_dim, full_mask

GEN_CAP = 20
FORMAT_HEADER = "uso-map v1"

Direction = Literal["up", "down"]


@dataclass(frozen=True, eq=False)
class Outmap:
    """Dense outmap of an orientation of the n-cube.

    ``table[v]`` is the mask of outgoing directions at vertex ``v``; the edge
    between ``v`` and ``v ^ bit`` points away from ``v`` iff ``table[v] & bit``.
    The table is not required to describe a consistent orientation, so that
    invalid inputs can be represented and rejected by the checkers.
    """

    n: int
    table: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        check_dim(self.n)
        table = np.array(self.table, dtype=np.int64)
        if table.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} entries for n={self.n}, got {table.size}")
        if table.size and (table.min() < 0 or table.max() > full_mask(self.n)):
            raise ValueError(f"outmap entries must be subsets of [{self.n}]")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @classmethod
    def from_list(cls, values) -> Outmap:
        size = len(values)
        n = size.bit_length() - 1
        if size == 0 or 1 << n != size:
            raise ValueError(f"table length {size} is not a power of two")
        return cls(n, np.asarray(values, dtype=np.int64))

    def eval(self, v: int) -> int:
        if not 0 <= v < self.table.size:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return int(self.table[v])

    __call__ = eval

    def tolist(self) -> list[int]:
        return self.table.tolist()

    def __len__(self):
        return self.table.size

    def __eq__(self, other):
        if not isinstance(other, Outmap):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        if self.n <= 4:
            return f"Outmap(n={self.n}, table={self.tolist()})"
        return f"Outmap(n={self.n}, table=[{self.table.size} entries])"


def is_orientation(m: Outmap) -> bool:
    """Every edge is outgoing at exactly one of its two endpoints."""
    v = np.arange(m.table.size)
    for k in range(m.n):
        b = 1 << k
        if np.any((m.table & b) == (m.table[v ^ b] & b)):
            return False
    return True


def flip(m: Outmap, directions: int) -> Outmap:
    """Reverse every edge whose direction lies in ``directions``."""
    if directions & ~full_mask(m.n):
        raise ValueError(f"flip set {directions} is not a subset of [{m.n}]")
    return Outmap(m.n, m.table ^ directions)


def combine(lower: Outmap, upper: Outmap, direction: Direction) -> Outmap:
    """Stack two n-dimensional outmaps as the facets of an (n+1)-cube.

    The new direction is element n+1. With ``"up"`` every new edge points from
    the lower facet to the upper one; with ``"down"`` the other way.
    """
    if lower.n != upper.n:
        raise ValueError(f"dimension mismatch: {lower.n} vs {upper.n}")
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    top = 1 << lower.n
    lo = lower.table | top if direction == "up" else lower.table
    hi = upper.table | top if direction == "down" else upper.table
    return Outmap(lower.n + 1, np.concatenate([lo, hi]))


def uniform(n: int, a: int) -> Outmap:
    """Uniform orientation towards ``a``: ``s(v) = v ^ a``."""
    check_dim(n, GEN_CAP)
    if a & ~full_mask(n):
        raise ValueError(f"{a} is not a subset of [{n}]")
    return Outmap(n, np.arange(1 << n, dtype=np.int64) ^ a)


def psi(n: int) -> Outmap:
    """The orientation whose orbit of the empty set has period ``2**n``.

    Built from ``s_1 = [1, 0]`` by
    ``s_{k+1}(v) = {k+1} | s_k(v)`` when ``k+1`` is not in ``v``, and
    ``s_{k+1}(v) = v - {k+1}`` otherwise.
    """
    if n < 1:
        raise ValueError("psi is defined for n >= 1")
    check_dim(n, GEN_CAP)
    table = np.array([1, 0], dtype=np.int64)
    for k in range(1, n):
        top = 1 << k
        table = np.concatenate([table | top, np.arange(top, dtype=np.int64)])
    return Outmap(n, table)


BASE_DIM = 3


@lru_cache(maxsize=None)
def _base_blocks(k: int) -> np.ndarray:
    from .verifier import enumerate_usos

    blocks = np.array([m.tolist() for m in enumerate_usos(k)], dtype=np.int64)
    blocks.flags.writeable = False
    return blocks


def random_uso(n: int, seed: int) -> Outmap:
    """Random member of the flip-product family (not uniform over all USOs).

    The cube is tiled by independent blocks of dimension ``min(n, 3)``, each
    drawn uniformly from all USOs of that dimension. Blocks are then stacked
    pairwise with a random up/down choice and flipped along a random
    direction set, level by level. Both steps preserve the unique sink
    property.
    """
    check_dim(n, GEN_CAP)
    rng = np.random.default_rng(seed)
    base = min(n, BASE_DIM)
    blocks = _base_blocks(base)
    # row i holds an independent k-dimensional outmap; 2**(n-k) rows at level k
    tables = blocks[rng.integers(0, len(blocks), size=1 << (n - base))]
    for k in range(base, n):
        rows = tables.shape[0] // 2
        top = 1 << k
        up = rng.integers(0, 2, size=rows).astype(bool)
        pairs = tables.reshape(rows, 2, 1 << k).copy()
        pairs[up, 0, :] |= top
        pairs[~up, 1, :] |= top
        tables = pairs.reshape(rows, 2 << k)
        tables ^= rng.integers(0, 2 << k, size=(rows, 1))
    return Outmap(n, tables[0])


def serialize(m: Outmap) -> str:
    return f"{FORMAT_HEADER}\nn={m.n}\n" + " ".join(map(str, m.tolist())) + "\n"


def deserialize(text: str) -> Outmap:
    if not text.endswith("\n"):
        raise ValueError("uso-map text must end with a newline")
    lines = text.split("\n")
    if lines[0] != FORMAT_HEADER:
        raise ValueError(f"bad header {lines[0]!r}, expected {FORMAT_HEADER!r}")
    if len(lines) < 3 or not lines[1].startswith("n="):
        raise ValueError("missing 'n=<dimension>' line")
    try:
        n = int(lines[1][2:])
    except ValueError:
        raise ValueError(f"bad dimension line {lines[1]!r}") from None
    if n < 0:
        raise ValueError(f"negative dimension {n}")
    check_dim(n, GEN_CAP)
    tokens = " ".join(lines[2:]).split()
    if len(tokens) != 1 << n:
        raise ValueError(f"expected {1 << n} entries for n={n}, got {len(tokens)}")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ValueError(f"non-integer entry: {exc}") from None
    full = full_mask(n)
    for v, val in enumerate(values):
        if val < 0 or val & ~full:
            raise ValueError(f"entry {val} at vertex {v} is not a subset of [{n}]")
    return Outmap(n, np.asarray(values, dtype=np.int64))


def load(path) -> Outmap:
    with open(path) as fh:
        return deserialize(fh.read())


def save(m: Outmap, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(m))


EXAMPLE_TABLE = (7, 6, 5, 4, 3, 0, 1, 2)


def example_uso() -> Outmap:
    """The worked 3-dimensional example: source at the empty set, sink {1,3}."""
    return Outmap(3, np.array(EXAMPLE_TABLE))
