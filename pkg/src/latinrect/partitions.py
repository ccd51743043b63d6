"""Set partitions of {1..m} in canonical restricted-growth form.

A partition is stored as its restricted growth string (rgs): entry i is
the block number of element i+1, blocks numbered in order of first
appearance, so the string is the unique canonical form.  Enumeration is
descending lexicographic on the rgs: the all-singletons partition comes
first, the one-block partition last.  The order is deterministic and
golden tests downstream rely on it.

Each partition carries a signed coefficient, the product over its blocks
of (-1)^(|B|-1) * (|B|-1)!.  These are the weights with which the block
sums of a profile combine into the injective per-column choice count.
"""

from functools import lru_cache
from math import factorial


class SetPartition:
    """A canonical set partition of {1..m}; blocks are a derived view."""

    __slots__ = ("rgs", "_blocks")

    def __init__(self, rgs):
        rgs = tuple(rgs)
        top = -1
        for i, b in enumerate(rgs):
            if b < 0 or b > top + 1:
                raise ValueError(f"growth string {rgs!r} is not canonical at position {i}")
            if b > top:
                top = b
        self.rgs = rgs
        self._blocks = None

    @property
    def m(self) -> int:
        return len(self.rgs)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        if self._blocks is None:
            count = max(self.rgs) + 1 if self.rgs else 0
            grouped = [[] for _ in range(count)]
            for i, b in enumerate(self.rgs):
                grouped[b].append(i + 1)
            self._blocks = tuple(tuple(g) for g in grouped)
        return self._blocks

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.rgs == other.rgs

    def __hash__(self):
        return hash(self.rgs)

    def __repr__(self):
        return f"SetPartition({list(self.rgs)!r})"


@lru_cache(maxsize=None)
def partitions_of(m: int) -> tuple[SetPartition, ...]:
    """All set partitions of {1..m}, descending lexicographic on the rgs.

    m = 0 yields the single empty partition.  The result is cached: the
    same partitions are reused by every term of a formula evaluation.
    """
    if m < 0:
        raise ValueError("ground-set size must be nonnegative")
    if m == 0:
        return (SetPartition(()),)
    out = []

    def extend(prefix, top):
        if len(prefix) == m:
            out.append(SetPartition(prefix))
            return
        for v in range(top + 1, -1, -1):
            extend(prefix + (v,), max(top, v))

    extend((0,), 0)
    return tuple(out)


def mobius_coefficient(p: SetPartition) -> int:
    """Signed weight of a partition: prod over blocks of (-1)^(|B|-1)(|B|-1)!."""
    coeff = 1
    for block in p.blocks:
        s = len(block)
        coeff *= (-1) ** (s - 1) * factorial(s - 1)
    return coeff


def bell_number(m: int) -> int:
    """B(m) via the Bell triangle."""
    if m < 0:
        raise ValueError("ground-set size must be nonnegative")
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]
