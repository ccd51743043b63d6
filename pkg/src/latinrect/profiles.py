"""Omission-class profiles and their summation machinery.

A profile tallies the floors of a configuration by omission class.  With
m tracked rows, a class is an integer in [0, 2^m) whose bit i (least
significant first) says whether the tracked row i's hall on that floor
is omitted.  A profile is a tuple of 2^m nonnegative counts indexed by
class, summing to n.  Which rectangle rows are "tracked" is fixed by the
caller: the reduced formulas track rows 2..k (bit 0 = row 2), the direct
total formulas track all rows (bit 0 = row 1).

Class labels render the bits in index order, so for m = 2 the classes
0..3 print as 00, 10, 01, 11.

`compositions` iterates every profile exactly once in colexicographic
order with an in-place increment, which is O(1) amortized per step.
"""

from functools import lru_cache
from typing import Iterator

from .tallies import OpTally


def class_weight(cls: int) -> int:
    """Number of omitted halls in the class: its popcount."""
    return cls.bit_count()


def class_label(cls: int, m: int) -> str:
    """Bit string of the class, bit 0 first (m = 2: 0 -> '00', 1 -> '10')."""
    return "".join("1" if cls >> i & 1 else "0" for i in range(m))


def compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Every profile of 2^m classes summing to n, colexicographic.

    Starts at (n, 0, ..., 0) and ends with all mass in the last class;
    yields C(n + 2^m - 1, 2^m - 1) tuples in total.
    """
    if n < 0 or m < 0:
        raise ValueError("need n >= 0 and m >= 0")
    q = 1 << m
    c = [0] * q
    c[0] = n
    while True:
        yield tuple(c)
        i = 0
        while i < q and c[i] == 0:
            i += 1
        if i >= q - 1:
            return
        v = c[i]
        c[i] = 0
        c[0] = v - 1
        c[i + 1] += 1


@lru_cache(maxsize=None)
def factorial_table(n: int) -> tuple[int, ...]:
    """0! .. n! as exact integers, computed once and shared."""
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    return tuple(fact)


def multinomial(counts, tally: OpTally | None = None) -> int:
    """n! / prod(counts[v]!) for n = sum(counts), exactly.

    Table-entry quotients are tallied as inner multiplications.
    """
    n = sum(counts)
    fact = factorial_table(n)
    denom = None
    for c in counts:
        if c < 0:
            raise ValueError("profile entries must be nonnegative")
        if denom is None:
            denom = fact[c]
        else:
            denom *= fact[c]
            if tally is not None:
                tally.mults_inner += 1
    if tally is not None:
        tally.mults_inner += 1
    return fact[n] // denom


def sign(counts) -> int:
    """(-1) to the total number of omitted halls, sum of weight(v) * counts[v]."""
    e = sum(class_weight(cls) * c for cls, c in enumerate(counts))
    return -1 if e & 1 else 1
