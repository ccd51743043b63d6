"""Independent ground truth by exhaustive search.

Everything here counts by filling cells and checking constraints
directly; none of it shares code with the formula evaluators, so
agreement between the two is evidence, not tautology.

Rectangles are sequences of rows of integers in 1..n.  A configuration
view of a rectangle places one room per (row, column) shaft at floor
`cells[i][j]`; column constraints say no two rooms of a column share a
floor, row constraints (for Latin rectangles only) say no two rooms of a
row share a floor.  A hall is a (row, floor) pair; a hall set is a set
of halls forced empty, never including the back row (row 1).
"""

import itertools
from math import factorial

from .guards import ResourceGuardError

Rows = tuple[tuple[int, ...], ...]

BRUTE_FORCE_MAX_K = 4
BRUTE_FORCE_MAX_N = 7
LONELY_HALL_MAX_K = 3
LONELY_HALL_MAX_N = 6


def _normalize(rows) -> Rows:
    rows = tuple(tuple(r) for r in rows)
    if not rows:
        return rows
    n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise ValueError("ragged rectangle")
        for v in r:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise ValueError(f"cell value {v!r} outside 1..{n}")
    return rows


def is_latin(rows) -> bool:
    """True iff no row and no column contains a duplicate entry.

    Raises ValueError for malformed input (ragged rows, cells outside
    1..n).  The empty rectangle is vacuously Latin.
    """
    rows = _normalize(rows)
    for r in rows:
        if len(set(r)) != len(r):
            return False
    for col in zip(*rows):
        if len(set(col)) != len(col):
            return False
    return True


def reduce_rectangle(rows) -> Rows:
    """Permute columns so the first row reads 1..n; rows otherwise intact."""
    rows = _normalize(rows)
    if not is_latin(rows):
        raise ValueError("cannot reduce a non-Latin rectangle")
    if not rows:
        return rows
    order = sorted(range(len(rows[0])), key=rows[0].__getitem__)
    return tuple(tuple(r[j] for j in order) for r in rows)


def indicator_tensor(rows):
    """0-1 tensor T[i][j][l] = 1 iff cells[i][j] == l+1 (a derived view).

    Lets tests assert the three defining conditions verbatim: exactly
    one room per shaft, at most one per hall, at most one per corridor.
    """
    rows = _normalize(rows)
    n = len(rows[0]) if rows else 0
    return tuple(
        tuple(tuple(1 if v == l + 1 else 0 for l in range(n)) for v in r) for r in rows
    )


def brute_force_count(
    k: int,
    n: int,
    variant: str = "reduced",
    *,
    max_k: int = BRUTE_FORCE_MAX_K,
    max_n: int = BRUTE_FORCE_MAX_N,
) -> int:
    """Exact Latin-rectangle count by column-by-column backtracking.

    Rows 2..k are filled one column at a time against a fixed first row
    1..n; one bitmask per row tracks used symbols and a column mask
    tracks the current column (seeded with the first-row symbol), with
    symbols tried in increasing order.  States reached through different
    column prefixes but with identical row masks complete in the same
    number of ways, so completions are shared through a memo keyed on
    the row masks.

    variant="total" scales the reduced count by n! rather than
    enumerating first rows.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if variant not in ("reduced", "total"):
        raise ValueError(f"unknown variant {variant!r}")
    if k > max_k or n > max_n:
        raise ResourceGuardError(
            f"brute force refused at k={k}, n={n} (guard k<={max_k}, n<={max_n}); "
            "raise the guard explicitly for a deeper search"
        )
    reduced = _count_reduced(k, n)
    return reduced if variant == "reduced" else factorial(n) * reduced


def _count_reduced(k: int, n: int) -> int:
    full = (1 << n) - 1
    memo: dict[tuple[int, ...], int] = {}

    def fill(masks: tuple[int, ...]) -> int:
        j = masks[0].bit_count()  # columns filled so far
        if j == n:
            return 1
        cached = memo.get(masks)
        if cached is not None:
            return cached
        total = 0

        def cell(i: int, colmask: int, acc: tuple[int, ...]):
            nonlocal total
            if i == k - 1:
                total += fill(acc)
                return
            avail = full & ~acc[i] & ~colmask
            while avail:
                b = avail & -avail
                avail ^= b
                cell(i + 1, colmask | b, acc[:i] + (acc[i] | b,) + acc[i + 1 :])

        cell(0, 1 << j, masks)
        memo[masks] = total
        return total

    if k == 1:
        return 1
    return fill((0,) * (k - 1))


def _normalize_halls(halls, k: int, n: int) -> frozenset[tuple[int, int]]:
    out = set()
    for row, floor in halls:
        if not 2 <= row <= k:
            raise ValueError(f"hall row {row} outside 2..{k} (back halls never omitted)")
        if not 1 <= floor <= n:
            raise ValueError(f"hall floor {floor} outside 1..{n}")
        out.add((row, floor))
    return frozenset(out)


def lonely_hall_count(
    k: int,
    n: int,
    halls=(),
    *,
    max_k: int = LONELY_HALL_MAX_K,
    max_n: int = LONELY_HALL_MAX_N,
) -> int:
    """Count reduced configurations avoiding every hall in `halls`.

    A reduced configuration fixes the back row at 1..n and lets rows
    2..k pick any floor per column subject only to the column rule: all
    picks of a column distinct, including the back pick.  Rows may
    repeat floors.  Every configuration is enumerated individually; this
    is the naive count the profile formula is checked against.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if k > max_k or n > max_n:
        raise ResourceGuardError(
            f"configuration enumeration refused at k={k}, n={n} "
            f"(guard k<={max_k}, n<={max_n})"
        )
    halls = _normalize_halls(halls, k, n)
    full = (1 << n) - 1
    blocked = [0] * (k + 1)
    for row, floor in halls:
        blocked[row] |= 1 << (floor - 1)

    def column(j: int) -> int:
        if j == n:
            return 1
        total = 0

        def pick(i: int, colmask: int):
            nonlocal total
            if i > k:
                total += column(j + 1)
                return
            avail = full & ~blocked[i] & ~colmask
            while avail:
                b = avail & -avail
                avail ^= b
                pick(i + 1, colmask | b)

        pick(2, 1 << j)
        return total

    return column(0)


def profile_of(halls, k: int, n: int) -> tuple[int, ...]:
    """Tally floors by omission class: bit i set iff row i+2's hall is in the set."""
    halls = _normalize_halls(halls, k, n)
    m = k - 1
    counts = [0] * (1 << m)
    for floor in range(1, n + 1):
        cls = 0
        for i in range(m):
            if (i + 2, floor) in halls:
                cls |= 1 << i
        counts[cls] += 1
    return tuple(counts)


def hall_sets(k: int, n: int):
    """Every subset of the (k-1) * n omittable halls, smallest first."""
    universe = [(row, floor) for row in range(2, k + 1) for floor in range(1, n + 1)]
    for size in range(len(universe) + 1):
        for combo in itertools.combinations(universe, size):
            yield frozenset(combo)


def injective_tuple_count(counts) -> int:
    """Brute-force ground truth for `choice_count`, by tuple enumeration.

    Realizes a floor classification with the given profile, then counts
    m-tuples of distinct floors where coordinate i may only use floors
    whose class has bit i clear.
    """
    m = (len(counts) - 1).bit_length()
    if len(counts) != 1 << m:
        raise ValueError("profile length must be a power of two")
    if any(c < 0 for c in counts):
        raise ValueError("profile entries must be nonnegative")
    n = sum(counts)
    if n**m > 10**7:
        raise ResourceGuardError(f"tuple enumeration refused: {n}^{m} tuples")
    floor_class = []
    for cls, c in enumerate(counts):
        floor_class.extend([cls] * c)
    total = 0
    for tup in itertools.product(range(n), repeat=m):
        if len(set(tup)) != m:
            continue
        if any(floor_class[f] >> i & 1 for i, f in enumerate(tup)):
            continue
        total += 1
    return total
