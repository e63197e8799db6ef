"""Subset masks and hypercube intervals.

A vertex of the n-cube is a subset of ``{1, ..., n}`` stored as an integer
mask, with element ``i`` at bit ``i - 1``. The same encoding is used for
direction sets and outmap values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_DIM = 30


def check_dim(n: int, cap: int = MAX_DIM) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer, got {n!r}")
    if n > cap:
        raise ValueError(f"dimension {n} exceeds cap {cap}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bit(element: int) -> int:
    """Mask of the singleton ``{element}``."""
    if element < 1:
        raise ValueError(f"elements are 1-based, got {element}")
    return 1 << (element - 1)


def sym_diff(a: int, b: int) -> int:
    return a ^ b


def is_subset(a: int, b: int) -> bool:
    return a & b == a


def elements(mask: int) -> list[int]:
    """Sorted elements of the subset encoded by ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_elements(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= bit(i)
    return mask


def format_set(mask: int) -> str:
    return "{" + ",".join(str(i) for i in elements(mask)) + "}"


def parse_mask(text: str) -> int:
    """Parse ``"5"`` or ``"{1,3}"`` (both mean elements 1 and 3)."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        body = text[1:-1].strip()
        if not body:
            return 0
        return from_elements(int(tok) for tok in body.split(","))
    value = int(text)
    if value < 0:
        raise ValueError(f"mask must be non-negative, got {value}")
    return value


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class Subcube:
    """The interval ``[lo:hi]`` of all ``w`` with ``lo <= w <= hi``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.hi < 0:
            raise ValueError("masks must be non-negative")
        if self.lo & self.hi != self.lo:
            raise ValueError(f"lo={self.lo} is not a subset of hi={self.hi}")

    @property
    def carrier(self) -> int:
        return self.hi ^ self.lo

    @property
    def dim(self) -> int:
        return self.carrier.bit_count()

    def vertices(self) -> Iterator[int]:
        for sub in submasks(self.carrier):
            yield self.lo | sub

    def __contains__(self, w: int) -> bool:
        return contains(self, w)

    def __str__(self):
        return f"[{format_set(self.lo)}:{format_set(self.hi)}]"


def contains(c: Subcube, w: int) -> bool:
    return c.lo & w == c.lo and w & c.hi == w


def carrier(c: Subcube) -> int:
    return c.hi ^ c.lo


def full_cube(n: int) -> Subcube:
    return Subcube(0, full_mask(n))


def enumerate_subcubes(n: int) -> Iterator[Subcube]:
    """Every one of the 3**n faces of the n-cube, each exactly once."""
    check_dim(n)
    full = full_mask(n)
    for lo in range(1 << n):
        for free in submasks(full & ~lo):
            yield Subcube(lo, lo | free)


def lambda_facets(n: int, direction: int) -> tuple[Subcube, Subcube]:
    """Lower and upper facets of the n-cube split along ``direction``."""
    check_dim(n)
    if not 1 <= direction <= n:
        raise ValueError(f"direction {direction} out of range 1..{n}")
    b = bit(direction)
    full = full_mask(n)
    return Subcube(0, full & ~b), Subcube(b, full)


def split(c: Subcube, direction: int) -> tuple[Subcube, Subcube]:
    """Facets of an arbitrary subcube along a direction in its carrier."""
    b = bit(direction)
    if not c.carrier & b:
        raise ValueError(f"direction {direction} is not in the carrier of {c}")
    return Subcube(c.lo, c.hi & ~b), Subcube(c.lo | b, c.hi)
