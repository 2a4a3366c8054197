from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markpart.durfee import (
    Dissection,
    ag_statistic,
    canonical_dissection,
    dissection_generating_function,
    find_dissections,
    is_admissible,
)
from markpart.partitions import enumerate_partitions
from markpart.qseries import multisum_F

from oracles import all_partitions

AG_PAIRS = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 2), (3, 3)]


def test_nine_one_is_not_admissible():
    # the square has width 1 and a 2 x 1 rectangle does not fit below it
    assert not is_admissible((9, 1), 3, 2)
    assert is_admissible((8, 1, 1), 3, 2)


def test_dissection_of_a_known_partition():
    (d,) = find_dissections((6, 2, 1, 1), 3, 2)
    assert d == Dissection((2,), (1,))
    assert str(d) == "[2s, 1r]"
    assert d.rows == 4 and d.area == 6


@pytest.mark.parametrize("k,a", AG_PAIRS)
def test_admissible_counts_match_the_multisum(k, a):
    series = multisum_F(k, a, 18).q_coefficients()
    counts = [sum(is_admissible(lam, k, a) for lam in enumerate_partitions(n)) for n in range(19)]
    assert counts == series


@pytest.mark.parametrize("k,a", AG_PAIRS)
def test_dissections_are_unique(k, a):
    for n in range(16):
        for lam in enumerate_partitions(n):
            assert len(find_dissections(lam, k, a)) <= 1


def test_table_statistic_values():
    expected = {(10,): 3, (6, 1, 1, 1, 1): 1, (8, 1, 1): 2, (8, 2): 2, (7, 3): 1, (4, 3, 3): 0}
    for lam, j in expected.items():
        assert ag_statistic(lam, 3, 3, 2) == j


def test_single_part_rule_when_a_equals_k():
    # lam = (lam_1, 1) of size Mj + 1 cannot have count j
    assert ag_statistic((6, 1), 3, 3, 3) == 1
    assert ag_statistic((5, 1), 3, 3, 3) == 2


def test_canonical_dissection_rejects_non_admissible():
    with pytest.raises(ValueError):
        canonical_dissection((9, 1), 3, 2)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))))
@settings(max_examples=20, deadline=None)
def test_generating_function_at_q_equals_one_factor(widths):
    # clearing 1/(q)_{n_1} leaves the Gaussian binomials, which sum to ordinary binomials
    gf = dissection_generating_function(widths, 25)
    poly = gf.mul_one_minus(1)
    for i in range(2, widths[0] + 1):
        poly = poly.mul_one_minus(i)
    expected = 1
    for hi, lo in zip(widths, widths[1:]):
        expected *= comb(hi, lo)
    assert sum(poly.q_coefficients()) == expected


def test_generating_function_of_one_block_is_bounded_parts():
    gf = dissection_generating_function((2,), 12)
    assert gf.q_coefficients() == [len([p for p in all_partitions(n) if len(p) <= 2]) for n in range(13)]
