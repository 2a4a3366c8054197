from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markpart.qseries import (
    MarkerPolynomial,
    ParameterError,
    ProductSpec,
    TruncatedSeries,
    ag_product,
    ag_residue_ok,
    first_difference,
    gauss_binom,
    inverse_pochhammer,
    marked_AG,
    marked_expansion,
    marked_product,
    multisum_F,
    pochhammer,
    qint,
)

from oracles import (
    all_partitions,
    gap_at_least,
    gaussian_binomial_by_boxes,
    parts_in,
    partitions_where,
    poly_mul,
    product_series,
)

CUT = 12

rows = st.lists(st.lists(st.integers(-5, 5), max_size=3), min_size=0, max_size=CUT + 1)


def _series(data):
    return TruncatedSeries(CUT, data)


def _as_dict(s):
    return {(n, e): c for n, row in enumerate(s.rows) for e, c in enumerate(row) if c}


# marker polynomials -------------------------------------------------------------

def test_marker_polynomial_arithmetic():
    p = MarkerPolynomial([1, 2])
    q = MarkerPolynomial([0, 0, 3])
    assert (p + q).coeffs == (1, 2, 3)
    assert (p * q).coeffs == (0, 0, 3, 6)
    assert (p - p).coeffs == ()
    assert p(2) == 5
    assert MarkerPolynomial([10, 4, 2, 1]).degree == 3


def test_marker_polynomial_text():
    assert str(MarkerPolynomial([10, 4, 2, 1])) == "10 + 4*w + 2*w^2 + w^3"
    assert str(MarkerPolynomial()) == "0"


# series arithmetic ---------------------------------------------------------------

@given(rows, rows)
def test_product_matches_naive_convolution(a, b):
    x, y = _series(a), _series(b)
    assert _as_dict(x * y) == poly_mul(_as_dict(x), _as_dict(y), CUT)


@given(rows, rows, rows)
def test_ring_axioms(a, b, c):
    x, y, z = _series(a), _series(b), _series(c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == TruncatedSeries.zero(CUT)


@given(rows)
def test_reciprocal_inverts_unit_series(a):
    x = _series([[1]] + a[1:])
    assert x * x.reciprocal() == TruncatedSeries.one(CUT)


def test_div_one_minus_is_geometric():
    s = TruncatedSeries.one(CUT).div_one_minus(3, 1)
    expected = {(3 * i, i): 1 for i in range(CUT // 3 + 1)}
    assert _as_dict(s) == expected
    assert s.mul_one_minus(3, 1) == TruncatedSeries.one(CUT)


@given(rows, st.integers(0, 4))
def test_w_substitution_moves_marker_into_q(a, s):
    x = _series(a)
    y = x.subs_w_qpower(s)
    expected = {}
    for (n, e), c in _as_dict(x).items():
        if n + s * e <= CUT:
            expected[(n + s * e, 0)] = expected.get((n + s * e, 0), 0) + c
    assert _as_dict(y) == {k: v for k, v in expected.items() if v}


@given(rows)
def test_machine_format_round_trip(a):
    x = _series(a)
    assert TruncatedSeries.from_machine(CUT, x.to_machine()) == x


def test_text_rendering():
    s = TruncatedSeries.one(3).div_one_minus(1, 1)
    assert s.to_text() == "(1) + (w)*q + (w^2)*q^2 + (w^3)*q^3 + O(q^4)"


def test_first_difference_reports_lowest_coefficient():
    a = TruncatedSeries.from_ints(5, [1, 1, 2, 3])
    b = TruncatedSeries.from_ints(5, [1, 1, 2, 4])
    assert first_difference(a, b) == (3, 0, 3, 4)
    assert first_difference(a, a) is None


# q-building blocks ----------------------------------------------------------------

def test_q_integer():
    assert qint(4, 10).q_coefficients()[:5] == [1, 1, 1, 1, 0]
    assert qint(2, 10, base=3).q_coefficients()[:4] == [1, 0, 0, 1]


def test_pochhammer_small_case():
    # (q^2; q)_2 = (1 - q^2)(1 - q^3)
    assert pochhammer(2, 1, 2, 8).q_coefficients() == [1, 0, -1, -1, 0, 1, 0, 0, 0]


def test_inverse_pochhammer_counts_partitions_with_bounded_parts():
    s = inverse_pochhammer(1, 1, 3, 15)
    assert s.q_coefficients() == [len(list(all_partitions(n, 3))) for n in range(16)]


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 3), (7, 1), (7, 0), (8, 4)])
def test_gauss_binomial_counts_partitions_in_a_box(n, k):
    coeffs = gauss_binom(n, k, 40).q_coefficients()
    expected = gaussian_binomial_by_boxes(n, k)
    assert coeffs[: len(expected)] == expected
    assert all(c == 0 for c in coeffs[len(expected):])


@given(st.integers(0, 9), st.integers(0, 9))
def test_gauss_binomial_symmetry_and_q_equals_one(n, k):
    if k > n:
        with pytest.raises(ValueError):
            gauss_binom(n, k, 30)
        return
    g = gauss_binom(n, k, 30)
    assert g == gauss_binom(n, n - k, 30)
    assert sum(g.q_coefficients()) == comb(n, k)


def test_gauss_binomial_four_choose_two():
    assert gauss_binom(4, 2, 10).q_coefficients()[:5] == [1, 1, 2, 1, 1]


# products and marked series ----------------------------------------------------------

@pytest.mark.parametrize("marked", [None, 1, 4, 6])
def test_marked_product_matches_oracle(marked):
    spec = ProductSpec.residues(5, {1, 4}, {marked: 1} if marked else None)
    parts = [m for m in range(1, 21) if m % 5 in (1, 4)]
    assert _as_dict(marked_product(spec, 20)) == product_series(parts, 20, marked)


def test_marked_product_counts_multiplicities():
    s = marked_product(ProductSpec.residues(2, {1}, {3: 1}), 14)
    for n in range(15):
        odd = partitions_where(n, parts_in({1}, 2))
        for e in range(5):
            assert s.coefficient(n, e) == sum(1 for p in odd if p.count(3) == e)


def test_rogers_ramanujan_coefficients_from_gap_two_partitions():
    s = marked_product(ProductSpec.residues(5, {1, 4}), 25)
    assert s.q_coefficients() == [len(partitions_where(n, gap_at_least(2))) for n in range(26)]


def test_marked_expansion_needs_leading_one():
    with pytest.raises(ValueError):
        marked_expansion([TruncatedSeries.zero(5)], 2, 5)


@given(st.integers(1, 8))
@settings(max_examples=8, deadline=None)
def test_marked_expansion_specialises_at_w_equal_one(m):
    # at w = 1 the marker factor (1 - q^M)/(1 - w q^M) disappears
    cutoff = 20
    alpha = [TruncatedSeries.monomial(cutoff, j * j) for j in range(5)]
    total = sum((a * inverse_pochhammer(1, 1, j, cutoff) for j, a in enumerate(alpha)),
                TruncatedSeries.zero(cutoff))
    assert marked_expansion(alpha, m, cutoff).subs_w(1) == total


# Andrews-Gordon ---------------------------------------------------------------------

@pytest.mark.parametrize("k,a", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 2), (4, 1)])
def test_multisum_equals_product(k, a):
    assert multisum_F(k, a, 30) == ag_product(k, a, 30)


def test_ag_with_k_one_is_rogers_ramanujan():
    # excluded residues are 0 and +-(2 - a) mod 5
    assert ag_product(1, 0, 30) == marked_product(ProductSpec.residues(5, {1, 4}), 30)
    assert ag_product(1, 1, 30) == marked_product(ProductSpec.residues(5, {2, 3}), 30)


def test_marked_ag_tally_at_ten():
    # 17 partitions of 10: ten with no 3, four with one, two with two, one with three
    assert marked_AG(3, 2, 3, 40)[10] == MarkerPolynomial([10, 4, 2, 1])


def test_marked_ag_rejects_excluded_residue():
    assert not ag_residue_ok(3, 2, 2)
    with pytest.raises(ParameterError):
        marked_AG(3, 2, 2, 20)


@pytest.mark.parametrize("k,a", [(1, 1), (2, 0), (2, 2), (3, 3)])
def test_marked_ag_matches_marked_product(k, a):
    for m in range(1, 12):
        if ag_residue_ok(k, a, m):
            assert marked_AG(k, a, m, 30) == ag_product(k, a, 30, marked=m)
