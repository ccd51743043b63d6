"""Counting formulas for k-by-n Latin rectangles.

`reduced_count` evaluates the inclusion-exclusion sum over hall-omission
profiles: each term is sign x multinomial x product of per-column choice
counts, accumulated exactly over all C(n + 2^(k-1) - 1, 2^(k-1) - 1)
profiles with no shortcuts (in particular, no special case for n < k:
the sum itself vanishes there).  `total_count` applies the n! bridge,
and `total_count_direct` runs the include-exclude over all k rows
instead, trading the reduction for a much larger profile space.  All
arithmetic is exact integers end to end.

Term evaluation is embarrassingly parallel; with threads > 1 the profile
stream is cut into fixed-size chunks whose exact partial sums and op
tallies are combined in stream order, so values and statistics never
depend on the thread count.
"""

import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice
from math import factorial

from . import column_counts, guards, profiles
from .tallies import OpTally, powered

_CHUNK = 1024


@dataclass(frozen=True)
class EvalStats:
    """Term count, real operation counts, and wall time of one evaluation."""

    terms: int
    adds: int
    mults: int
    elapsed: float


@dataclass(frozen=True)
class CountResult:
    k: int
    n: int
    variant: str  # "reduced" | "total"
    method: str  # "formula" | "oracle" | "factorial-bridge" | "direct-L"
    value: int
    stats: EvalStats
    note: str | None = None


def _validate(k: int, n: int) -> None:
    if k < 1:
        raise ValueError("need k >= 1")
    if n < 0:
        raise ValueError("need n >= 0")


def _chunk_sum(chunk, term_fn, want_tally):
    tally = OpTally() if want_tally else None
    total = 0
    for p in chunk:
        total += term_fn(p, tally)
        if tally is not None:
            tally.adds += 1
    return total, len(chunk), tally


def _signed_profile_sum(n, m, term_fn, threads, tally):
    gen = profiles.compositions(n, m)
    if threads <= 1:
        total = 0
        terms = 0
        for p in gen:
            total += term_fn(p, tally)
            terms += 1
            if tally is not None:
                tally.adds += 1
        return total, terms
    total = 0
    terms = 0

    def merge(future):
        nonlocal total, terms
        sub, cnt, sub_tally = future.result()
        total += sub
        terms += cnt
        if tally is not None:
            tally.merge(sub_tally)

    # chunks are merged oldest-first, so results and tallies never depend
    # on the thread count; the window bounds memory on long streams
    window = deque()
    max_inflight = max(4 * threads, 8)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            chunk = list(islice(gen, _CHUNK))
            if not chunk:
                break
            window.append(pool.submit(_chunk_sum, chunk, term_fn, tally is not None))
            if len(window) >= max_inflight:
                merge(window.popleft())
        while window:
            merge(window.popleft())
    return total, terms


def _reduced_term(profile, tally):
    coeff = profiles.multinomial(profile, tally)
    prod = column_counts.config_count(profile, tally)
    term = coeff * prod
    if tally is not None:
        tally.mults_inner += 1
    return term if profiles.sign(profile) > 0 else -term


def evaluate_reduced(
    k: int,
    n: int,
    *,
    threads: int = 1,
    max_terms: int | None = None,
    tally: OpTally | None = None,
):
    """Raw reduced-count evaluation: (value, terms evaluated, elapsed seconds).

    The caller owns the tally; `reduced_count` is the packaged form.
    """
    _validate(k, n)
    m = k - 1
    limit = guards.max_terms_limit(max_terms)
    predicted = guards.composition_count(n, 1 << m)
    guards.ensure_within(predicted, limit, f"reduced count for k={k}, n={n}")
    start = time.perf_counter()
    value, terms = _signed_profile_sum(n, m, _reduced_term, threads, tally)
    return value, terms, time.perf_counter() - start


def reduced_count(
    k: int,
    n: int,
    *,
    threads: int = 1,
    max_terms: int | None = None,
    instrument: bool = True,
) -> CountResult:
    """Number of k-by-n Latin rectangles whose first row is 1..n in order.

    k = 1 gives 1 for every n (single empty-class profile), and the sum
    comes out 0 whenever 1 <= n < k because every term vanishes; both
    fall out of the formula rather than being special-cased.
    """
    tally = OpTally() if instrument else None
    value, terms, elapsed = evaluate_reduced(
        k, n, threads=threads, max_terms=max_terms, tally=tally
    )
    stats = EvalStats(
        terms=terms,
        adds=tally.adds if tally else 0,
        mults=tally.mults_total if tally else 0,
        elapsed=elapsed,
    )
    return CountResult(k, n, "reduced", "formula", value, stats)


def total_count(
    k: int,
    n: int,
    *,
    threads: int = 1,
    max_terms: int | None = None,
    instrument: bool = True,
) -> CountResult:
    """n! times the reduced count: all k-by-n Latin rectangles."""
    base = reduced_count(
        k, n, threads=threads, max_terms=max_terms, instrument=instrument
    )
    stats = EvalStats(
        terms=base.stats.terms,
        adds=base.stats.adds,
        mults=base.stats.mults + (1 if instrument else 0),
        elapsed=base.stats.elapsed,
    )
    return CountResult(k, n, "total", "factorial-bridge", factorial(n) * base.value, stats)


def _literal_bracket(profile, tally):
    # k = 2 only: bracket printed with the fully-omitted class subtracted
    # instead of the fully-open one.
    a = profile[0] + profile[1]
    b = profile[0] + profile[2]
    prod = a * b
    result = prod - profile[3]
    if tally is not None:
        tally.adds += 3
        tally.mults_inner += 1
    return result


def total_count_direct(
    k: int,
    n: int,
    bracket: str = "derived",
    *,
    threads: int = 1,
    max_terms: int | None = None,
    instrument: bool = True,
) -> CountResult:
    """All k-by-n Latin rectangles by include-exclude over every hall.

    Each term raises one per-column bracket to the n-th power; brackets
    may be negative along the way, which is fine for exact integers.
    `bracket` picks, for k = 2 only, between the partition-derived
    bracket (... - s00) and the literal variant (... - s11); the two
    sums agree everywhere they have been compared.  k > 3 follows the
    same visible pattern and is flagged as extrapolated in the result.
    """
    _validate(k, n)
    if bracket not in ("derived", "literal"):
        raise ValueError(f"unknown bracket variant {bracket!r}")
    if bracket == "literal" and k != 2:
        raise ValueError("the literal bracket variant is defined for k = 2 only")
    limit = guards.max_terms_limit(max_terms)
    predicted = guards.composition_count(n, 1 << k)
    guards.ensure_within(predicted, limit, f"direct total count for k={k}, n={n}")

    base_fn = _literal_bracket if bracket == "literal" else column_counts.choice_count

    def term(profile, tally):
        coeff = profiles.multinomial(profile, tally)
        power = powered(base_fn(profile, tally), n, tally)
        value = coeff * power
        if tally is not None:
            tally.mults_inner += 1
        return value if profiles.sign(profile) > 0 else -value

    tally = OpTally() if instrument else None
    start = time.perf_counter()
    value, terms = _signed_profile_sum(n, k, term, threads, tally)
    elapsed = time.perf_counter() - start
    stats = EvalStats(
        terms=terms,
        adds=tally.adds if tally else 0,
        mults=tally.mults_total if tally else 0,
        elapsed=elapsed,
    )
    note = "extrapolated beyond the k<=3 cases" if k > 3 else None
    return CountResult(k, n, "total", "direct-L", value, stats, note)


def derangements_classical(n: int) -> int:
    """Alternating factorial sum for fixed-point-free permutations, exactly."""
    if n < 0:
        raise ValueError("need n >= 0")
    fact = profiles.factorial_table(n)
    return sum((-1 if r & 1 else 1) * (fact[n] // fact[r]) for r in range(n + 1))


def derangements_ryser(n: int) -> int:
    """Ryser's derangement sum, with the 0^0 = 1 convention."""
    if n < 0:
        raise ValueError("need n >= 0")
    fact = profiles.factorial_table(n)
    total = 0
    for r in range(n + 1):
        binom = fact[n] // (fact[r] * fact[n - r])
        term = binom * (n - r) ** r * (n - r - 1) ** (n - r)
        total += -term if r & 1 else term
    return total
