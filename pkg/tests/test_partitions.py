import pytest
from hypothesis import given
from hypothesis import strategies as st

from markpart.partitions import (
    ALL,
    DISTINCT,
    GAP2,
    GAP2_NO_ONES,
    GG_GAP,
    ODD,
    RR1_PARTS,
    ConstraintSet,
    Gap,
    Partition,
    Staircase,
    Statistic,
    conjugate,
    embed_count,
    enumerate_partitions,
    mark_statistic,
    remove_copies,
    shift_statistic,
    staircase,
    staircase_remove,
)

from oracles import all_partitions, copies, distinct, gap_at_least, gollnitz_gordon, parts_in

partitions = st.lists(st.integers(1, 9), max_size=8).map(lambda xs: Partition(sorted(xs, reverse=True)))


# the Partition type ----------------------------------------------------------------

def test_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((3, 0))


def test_parse_multiplicity_notation():
    assert Partition.parse("7,7,7,1^10") == (7, 7, 7) + (1,) * 10
    assert Partition.parse("7^3,1^10").compact() == "7^3,1^10"
    assert Partition.parse("") == ()


@given(partitions)
def test_parse_inverts_compact_and_str(lam):
    assert Partition.parse(lam.compact()) == lam
    assert Partition.parse(str(lam)) == lam


@given(partitions)
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_multiplicities():
    lam = Partition.parse("6,4^2,1")
    assert lam.multiplicities() == {6: 1, 4: 2, 1: 1}
    assert lam.multiplicity(4) == 2
    assert lam.weight == 15


# constraint sets and enumeration --------------------------------------------------

def test_known_partition_numbers():
    assert [len(enumerate_partitions(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@pytest.mark.parametrize(
    "family,oracle",
    [
        (ALL, lambda p: True),
        (DISTINCT, distinct),
        (ODD, parts_in({1}, 2)),
        (RR1_PARTS, parts_in({1, 4}, 5)),
        (GAP2, gap_at_least(2)),
        (GAP2_NO_ONES, lambda p: gap_at_least(2)(p) and 1 not in p),
        (GG_GAP, gollnitz_gordon),
    ],
)
def test_enumeration_matches_filtered_brute_force(family, oracle):
    for n in range(16):
        got = enumerate_partitions(n, family)
        assert set(got) == {p for p in all_partitions(n) if oracle(p)}
        assert len(set(got)) == len(got)


def test_enumeration_order_is_reverse_lexicographic():
    got = enumerate_partitions(6)
    assert list(got) == sorted(got, reverse=True)


def test_constraint_with_deny_and_allow():
    c = ConstraintSet.residue_classes(5, {1, 4}, deny={4}, allow={8})
    assert [p for p in range(1, 15) if c.allows(p)] == [1, 6, 8, 9, 11, 14]
    assert c.multiplicative
    assert not GAP2.multiplicative


def test_max_parts():
    c = ConstraintSet(max_parts=2)
    assert all(len(p) <= 2 for p in enumerate_partitions(9, c))


def test_gollnitz_gordon_gap():
    assert Gap.GAP2_EVEN3.allows(7, 4)
    assert not Gap.GAP2_EVEN3.allows(6, 4)
    assert Gap.GAP2_EVEN3.allows(7, 5)


# staircases ----------------------------------------------------------------------

def test_staircases():
    assert staircase(Staircase.STAR, 3) == (5, 3, 1)
    assert staircase(Staircase.DOUBLE_STAR, 3) == (6, 4, 2)
    assert staircase(Staircase.ST, 4) == (4, 3, 2, 1)


def test_staircase_removal_example():
    assert staircase_remove((8, 7, 3, 1), Staircase.ST) == (3, 2, 2, 2)


def test_staircase_removal_needs_the_gap():
    with pytest.raises(ValueError):
        staircase_remove((5, 4), Staircase.STAR)


@given(partitions)
def test_staircase_removal_inverts_adding_it(mu):
    # add a staircase to a partition's conjugate and strip it again
    rows = list(conjugate(mu)) or []
    if not rows:
        return
    stair = staircase(Staircase.STAR, len(rows))
    lam = tuple(r + s for r, s in zip(rows, stair))
    assert staircase_remove(lam, Staircase.STAR) == mu


# embedding -------------------------------------------------------------------------

def test_embedding_examples():
    assert embed_count((6, 4, 4, 1), Partition.parse("9,6^7,4^5,1^8")) == 2
    assert embed_count((6, 4), (6, 6, 4, 4, 4, 4)) == 2
    assert remove_copies((6, 4), (6, 6, 4, 4, 4, 4), 2) == (4, 4)


@given(partitions, partitions)
def test_embedding_matches_oracle(lam, mu):
    if not lam:
        with pytest.raises(ValueError):
            embed_count(lam, mu)
        return
    assert embed_count(lam, mu) == copies(lam, mu)


@given(st.integers(1, 6), partitions)
def test_single_part_embedding_is_multiplicity(m, mu):
    assert embed_count((m,), mu) == mu.count(m)


# statistics ---------------------------------------------------------------------------

def test_difference_statistic():
    assert mark_statistic(Statistic.RR1_MARK, (22,), 7) == 3
    assert mark_statistic(Statistic.RR1_MARK, (20, 2), 7) == 2
    assert mark_statistic(Statistic.EULER_MARK, (16, 2), 5) == 2
    assert mark_statistic(Statistic.RR1_MARK, (), 4) == 0


def test_rr2_single_part_rule():
    # 22 = 7*2 + 8 keeps k = 2, 15 = 7*2 + 1 must drop to k = 1
    assert mark_statistic(Statistic.RR2_MARK, (22,), 7) == 2
    assert mark_statistic(Statistic.RR2_MARK, (15,), 7) == 1
    assert mark_statistic(Statistic.RR2_MARK, (14,), 7) == 2


def test_gollnitz_gordon_two_part_rule():
    assert mark_statistic(Statistic.GG1_MARK, (27, 3, 1), 7) == 3
    assert mark_statistic(Statistic.GG1_MARK, (27, 4), 7) == 2
    assert mark_statistic(Statistic.GG1_MARK, (28, 3), 7) == 3


def test_staircase_statistic_switches_at_m_parts():
    # 9,7,5,3 has four parts, M = 4: strip the staircase, count 4's in the conjugate
    assert mark_statistic(Statistic.RR1_STAR, (9, 7, 5, 3), 4) == 2
    assert mark_statistic(Statistic.RR1_STAR, (18, 5, 1), 4) == 2


def test_statistic_rejects_partitions_outside_its_family():
    with pytest.raises(ValueError):
        mark_statistic(Statistic.RR1_MARK, (5, 4), 4)
    with pytest.raises(ValueError):
        mark_statistic(Statistic.RR2_MARK, (3, 1), 3)
    with pytest.raises(ValueError):
        mark_statistic(Statistic.RR1_MARK, (5,), 0)


def test_shift_statistics():
    assert shift_statistic(Statistic.SHIFT_RR, (9,), 4, 8)
    assert not shift_statistic(Statistic.SHIFT_RR, (8, 1), 4, 8)
    assert not shift_statistic(Statistic.SHIFT23, (13,))
    assert shift_statistic(Statistic.SHIFT23, (12, 1))
    with pytest.raises(ValueError):
        shift_statistic(Statistic.SHIFT_RR, (9,))
