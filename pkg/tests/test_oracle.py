import itertools
from math import factorial

import pytest

from latinrect.guards import ResourceGuardError
from latinrect.oracle import (
    brute_force_count,
    hall_sets,
    indicator_tensor,
    is_latin,
    lonely_hall_count,
    profile_of,
    reduce_rectangle,
)

SQUARE_3 = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
RECT_3x5 = ((1, 3, 2, 5, 4), (2, 1, 4, 3, 5), (5, 2, 1, 4, 3))


def permutation_filter_count(k, n):
    """Ground truth by filtering products of permutations of the later rows."""
    first = tuple(range(1, n + 1))
    count = 0
    perms = list(itertools.permutations(first))
    for rest in itertools.product(perms, repeat=k - 1):
        rows = (first,) + rest
        if all(len(set(col)) == k for col in zip(*rows)):
            count += 1
    return count


def test_is_latin_examples():
    assert is_latin(SQUARE_3)
    assert is_latin(RECT_3x5)
    assert not is_latin(((1, 2), (1, 2)))
    assert is_latin(())  # vacuous


def test_is_latin_rejects_malformed_cells():
    with pytest.raises(ValueError):
        is_latin(((1, 2), (0, 1)))
    with pytest.raises(ValueError):
        is_latin(((1, 2), (3, 1)))
    with pytest.raises(ValueError):
        is_latin(((1, 2), (1,)))


def test_indicator_tensor_conditions():
    tensor = indicator_tensor(RECT_3x5)
    k, n = 3, 5
    for i in range(k):
        for j in range(n):
            assert sum(tensor[i][j][l] for l in range(n)) == 1  # one per shaft
    for i in range(k):
        for l in range(n):
            assert sum(tensor[i][j][l] for j in range(n)) <= 1  # one per hall
    for j in range(n):
        for l in range(n):
            assert sum(tensor[i][j][l] for i in range(k)) <= 1  # one per corridor


def test_reduce_examples():
    assert reduce_rectangle(RECT_3x5) == (
        (1, 2, 3, 4, 5),
        (2, 4, 1, 5, 3),
        (5, 1, 2, 3, 4),
    )
    assert reduce_rectangle(SQUARE_3) == SQUARE_3
    assert reduce_rectangle(((2, 1), (1, 2))) == ((1, 2), (2, 1))


def test_reduce_is_idempotent_and_latin_preserving():
    once = reduce_rectangle(RECT_3x5)
    assert is_latin(once)
    assert reduce_rectangle(once) == once
    with pytest.raises(ValueError):
        reduce_rectangle(((1, 2), (1, 2)))


@pytest.mark.parametrize("k,n", [(k, n) for k in (1, 2, 3) for n in range(1, 6)] + [(4, n) for n in range(1, 5)])
def test_brute_force_matches_permutation_filter(k, n):
    assert brute_force_count(k, n) == permutation_filter_count(k, n)


def test_brute_force_examples():
    assert brute_force_count(2, 4) == 9
    assert brute_force_count(3, 3) == 2
    assert brute_force_count(1, 3, "total") == 6
    assert brute_force_count(3, 4, "total") == factorial(4) * brute_force_count(3, 4)
    assert brute_force_count(3, 0) == 1


def test_brute_force_guard():
    with pytest.raises(ResourceGuardError):
        brute_force_count(5, 5)
    with pytest.raises(ResourceGuardError):
        brute_force_count(3, 8)
    assert brute_force_count(5, 5, max_k=5) == 1344  # guard is configurable
    with pytest.raises(ValueError):
        brute_force_count(0, 3)
    with pytest.raises(ValueError):
        brute_force_count(2, 2, "sideways")


def test_lonely_hall_examples():
    assert lonely_hall_count(2, 3) == 8
    assert lonely_hall_count(2, 4, {(2, 2)}) == 24
    assert lonely_hall_count(2, 4, {(2, 1), (2, 2)}) == 4
    assert lonely_hall_count(2, 5, {(2, 1), (2, 2)}) == 72


def test_lonely_hall_guard_and_validation():
    with pytest.raises(ResourceGuardError):
        lonely_hall_count(4, 3)
    with pytest.raises(ResourceGuardError):
        lonely_hall_count(2, 7)
    with pytest.raises(ValueError):
        lonely_hall_count(2, 3, {(1, 1)})  # back halls never omitted
    with pytest.raises(ValueError):
        lonely_hall_count(2, 3, {(2, 4)})


def test_lonely_hall_dominates_latin_count():
    for k, n in ((2, 3), (2, 4), (3, 3), (3, 4)):
        assert lonely_hall_count(k, n) >= brute_force_count(k, n)


def test_lonely_hall_configs_restricted_to_permutation_rows_are_latin():
    # k = 2: filter second rows that are permutations out of all configurations
    for n in (3, 4):
        floors = range(1, n + 1)
        total = 0
        latin = 0
        for row in itertools.product(*[[f for f in floors if f != j] for j in floors]):
            total += 1
            if len(set(row)) == n:
                latin += 1
        assert total == lonely_hall_count(2, n)
        assert latin == brute_force_count(2, n)


def test_profile_of_examples():
    assert profile_of((), 2, 4) == (4, 0)
    assert profile_of({(2, 1), (3, 1)}, 3, 3) == (2, 0, 0, 1)
    assert profile_of({(2, 1), (3, 2)}, 3, 4) == (2, 1, 1, 0)


def test_equal_profiles_give_equal_counts():
    for k, n in ((2, 4), (3, 3)):
        by_profile = {}
        for halls in hall_sets(k, n):
            value = lonely_hall_count(k, n, halls)
            key = profile_of(halls, k, n)
            assert by_profile.setdefault(key, value) == value


def test_hall_sets_enumeration():
    sets = list(hall_sets(3, 2))
    assert len(sets) == 16
    assert len(set(sets)) == 16


def test_inclusion_exclusion_identity_small():
    for k, n in ((2, 3), (2, 4), (3, 3)):
        acc = 0
        for halls in hall_sets(k, n):
            acc += (-1) ** len(halls) * lonely_hall_count(k, n, halls)
        assert acc == brute_force_count(k, n)
