import pytest

from latinrect.partitions import SetPartition, bell_number, mobius_coefficient, partitions_of

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def test_empty_ground_set_has_one_partition():
    parts = partitions_of(0)
    assert len(parts) == 1
    assert parts[0].blocks == ()
    assert mobius_coefficient(parts[0]) == 1


def test_two_element_order_golden():
    parts = partitions_of(2)
    assert [p.blocks for p in parts] == [((1,), (2,)), ((1, 2),)]


def test_three_element_partitions_match_expected_block_sets():
    got = {p.blocks for p in partitions_of(3)}
    assert got == {
        ((1,), (2,), (3,)),
        ((1, 2), (3,)),
        ((1,), (2, 3)),
        ((1, 3), (2,)),
        ((1, 2, 3),),
    }


@pytest.mark.parametrize("m", range(9))
def test_count_matches_bell_number(m):
    assert len(partitions_of(m)) == bell_number(m) == BELL[m]


@pytest.mark.parametrize("m", range(7))
def test_canonical_form_and_block_invariants(m):
    for p in partitions_of(m):
        rgs = p.rgs
        if m:
            assert rgs[0] == 0
        top = 0
        for i in range(1, m):
            assert rgs[i] <= top + 1
            top = max(top, rgs[i])
        seen = set()
        for block in p.blocks:
            assert block
            assert not seen & set(block)
            seen |= set(block)
        assert seen == set(range(1, m + 1))


def test_descending_lexicographic_order():
    for m in range(2, 7):
        strings = [p.rgs for p in partitions_of(m)]
        assert strings == sorted(strings, reverse=True)


@pytest.mark.parametrize(
    "blocks,expected",
    [
        ([0, 1, 2], 1),  # {{1},{2},{3}}
        ([0, 0, 1], -1),  # {{1,2},{3}}
        ([0, 0, 0], 2),  # {{1,2,3}}
        ([0, 0, 0, 0], -6),  # {{1,2,3,4}}
    ],
)
def test_mobius_examples(blocks, expected):
    assert mobius_coefficient(SetPartition(blocks)) == expected


def test_mobius_sum_is_zero_above_one_element():
    for m in range(2, 9):
        assert sum(mobius_coefficient(p) for p in partitions_of(m)) == 0
    for m in (0, 1):
        assert sum(mobius_coefficient(p) for p in partitions_of(m)) == 1


def test_enumeration_is_deterministic():
    first = [p.rgs for p in partitions_of(5)]
    second = [p.rgs for p in partitions_of(5)]
    assert first == second


def test_bell_examples():
    assert bell_number(0) == 1
    assert bell_number(3) == 5
    assert bell_number(4) == 15


def test_non_canonical_growth_string_rejected():
    with pytest.raises(ValueError):
        SetPartition([0, 2])
    with pytest.raises(ValueError):
        SetPartition([1])
    with pytest.raises(ValueError):
        partitions_of(-1)
