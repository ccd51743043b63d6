"""Per-column choice counts as a function of a hall-omission profile.

One column of a reduced configuration needs each non-back row to pick a
floor: all picks distinct, every pick avoiding the floors whose hall for
that row is omitted.  `choice_count` counts those picks for a profile by
inclusion-exclusion over coincidence patterns of the rows, i.e. a sum
over set partitions of the row set weighted by the signed coefficients
from `partitions`.  `config_count` multiplies per-column counts over a
whole profile; the floor carrying the column's back-row pick is handled
by shifting one floor into the fully-omitted class first.

Row convention here: bit i of a class index refers to rectangle row
i + 2 (bit 0 is the row right after the fixed back row), matching the
ground elements 1..m of the partitions.
"""

from functools import lru_cache

from . import partitions
from .tallies import OpTally, assembly_product, powered


@lru_cache(maxsize=None)
def _zero_classes(m: int, mask: int) -> tuple[int, ...]:
    return tuple(cls for cls in range(1 << m) if not cls & mask)


@lru_cache(maxsize=None)
def _expansion(m: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(coefficient, block bitmasks) per partition of {1..m}, in order."""
    out = []
    for p in partitions.partitions_of(m):
        masks = []
        for block in p.blocks:
            bm = 0
            for e in block:
                bm |= 1 << (e - 1)
            masks.append(bm)
        out.append((partitions.mobius_coefficient(p), tuple(masks)))
    return tuple(out)


def _tracked_rows(counts) -> int:
    m = (len(counts) - 1).bit_length()
    if len(counts) != 1 << m:
        raise ValueError(f"profile length {len(counts)} is not a power of two")
    return m


def block_sum(counts, block, tally: OpTally | None = None) -> int:
    """Sum of profile entries over classes open for every row in `block`.

    `block` is a nonempty set of 1-based row positions within the
    tracked rows.
    """
    m = _tracked_rows(counts)
    mask = 0
    for e in block:
        if not 1 <= e <= m:
            raise ValueError(f"block element {e} outside 1..{m}")
        mask |= 1 << (e - 1)
    if mask == 0:
        raise ValueError("block must be nonempty")
    return _masked_sum(counts, _zero_classes(m, mask), tally)


def _masked_sum(counts, zero_classes, tally):
    total = counts[zero_classes[0]]
    for cls in zero_classes[1:]:
        total += counts[cls]
        if tally is not None:
            tally.adds += 1
    return total


def choice_count(counts, tally: OpTally | None = None) -> int:
    """Distinct-floor choices for one column under the given profile.

    Entries may be negative (the direct total formulas raise possibly
    negative brackets to powers); the counting meaning applies only to
    nonnegative profiles.  m = 0 gives the empty product 1.
    """
    m = _tracked_rows(counts)
    total = None
    for coeff, masks in _expansion(m):
        prod = None
        for bm in masks:
            fa = _masked_sum(counts, _zero_classes(m, bm), tally)
            if prod is None:
                prod = fa
            else:
                prod *= fa
                if tally is not None:
                    tally.mults_inner += 1
        if prod is None:
            prod = 1
        if coeff == -1:
            term = -prod
        elif coeff == 1:
            term = prod
        else:
            term = coeff * prod
            if tally is not None:
                tally.mults_inner += 1
        if total is None:
            total = term
        else:
            total += term
            if tally is not None:
                tally.adds += 1
    return total


def shift_profile(counts, cls: int) -> tuple[int, ...]:
    """Move one floor from class `cls` into the fully-omitted class.

    The fully-omitted (all-ones) class itself shifts to the profile
    unchanged.  Shifting any other empty class is a caller bug: callers
    skip zero-exponent factors before shifting.
    """
    counts = tuple(counts)
    all_ones = len(counts) - 1
    if not 0 <= cls <= all_ones:
        raise ValueError(f"class {cls} outside 0..{all_ones}")
    if cls == all_ones:
        return counts
    if counts[cls] < 1:
        raise ValueError(f"cannot shift empty class {cls} of profile {counts}")
    shifted = list(counts)
    shifted[cls] -= 1
    shifted[all_ones] += 1
    return tuple(shifted)


def config_count(counts, tally: OpTally | None = None) -> int:
    """Reduced configurations omitting every hall of a set with this profile.

    Product over classes with nonzero count of the shifted column choice
    count raised to that count; zero-exponent factors are omitted before
    shifting, so no intermediate profile goes negative.  Nonnegative for
    every valid profile.
    """
    powers = []
    for cls, cnt in enumerate(counts):
        if cnt == 0:
            continue
        if cnt < 0:
            raise ValueError("profile entries must be nonnegative")
        base = choice_count(shift_profile(counts, cls), tally)
        powers.append(powered(base, cnt, tally))
    return assembly_product(powers, tally)
