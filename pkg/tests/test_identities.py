import json

import pytest

from markpart.identities import (
    ALPHA_FAMILIES,
    CombinatorialPair,
    IdentitySpec,
    lookup,
    registry,
)
from markpart.partitions import GAP2, RR1_PARTS, Partition
from markpart.qseries import ParameterError, TruncatedSeries, first_difference
from markpart.verify import (
    count_table,
    embedding_product,
    embedding_series,
    inequality_series,
    no_copy_series,
    series_sides,
    suite_jobs,
    verify,
    verify_combinatorial,
    verify_inequality,
    verify_marked_sum,
    verify_series,
    witness_sets,
)

from oracles import copies, gap_at_least, parts_in, partitions_where


def test_registry_is_large_and_ids_are_unique():
    ids = [s.id for s in registry()]
    assert len(ids) == len(set(ids))
    assert len(ids) >= 14
    kinds = {s.kind for s in registry()}
    assert kinds == {"series", "combinatorial", "marked-sum", "inequality"}


def test_lookup_accepts_aliases_and_rejects_unknown():
    assert lookup("ag-comb").id == "agcombm"
    assert lookup("RR1X").id == "rr1x"
    with pytest.raises(KeyError, match="known ids"):
        lookup("no-such-identity")


def test_every_alpha_family_is_registered():
    for family in ALPHA_FAMILIES:
        assert lookup(f"mainprop-{family}").kind == "series"


@pytest.mark.parametrize("spec", [s for s in registry() if s.kind == "series"], ids=lambda s: s.id)
def test_series_identities_at_small_cutoff(spec):
    for params in spec.sweep()[:4]:
        assert verify_series(spec, params, 25).passed


@pytest.mark.parametrize("spec", [s for s in registry() if s.kind == "combinatorial"], ids=lambda s: s.id)
def test_partition_theorems_at_small_size(spec):
    for params in spec.sweep()[:3]:
        assert verify_combinatorial(spec, params, 16).passed


# hypotheses ------------------------------------------------------------------------

@pytest.mark.parametrize(
    "identity,params",
    [
        ("rr1x", {"M": 5}),
        ("rr2x", {"M": 4}),
        ("euler-marked", {"M": 4}),
        ("gg1x", {"M": 3}),
        ("gg2x", {"M": 2}),
        ("agbig", {"k": 3, "a": 2, "M": 2}),
        ("shift-euler", {"M": 3, "N": 7}),
        ("inequality", {"M": 2, "lam": Partition((1, 1)), "theta": Partition((2,))}),
        ("extendrrcomb", {"lam": Partition((2,))}),
    ],
)
def test_hypothesis_violations_are_rejected(identity, params):
    with pytest.raises(ParameterError, match="hypothesis"):
        verify(identity, params)


def test_missing_parameter():
    with pytest.raises(ValueError, match="needs parameter"):
        verify("rr1x", {})


# series values -----------------------------------------------------------------------

def test_rr1x_product_side_counts_marked_parts():
    lhs, _ = series_sides(lookup("rr1x"), {"M": 4}, 20)
    for n in range(21):
        pool = partitions_where(n, parts_in({1, 4}, 5))
        for k in range(6):
            assert lhs.coefficient(n, k) == sum(1 for p in pool if p.count(4) == k)


def test_agbig_profile_at_ten():
    report = verify("agbig", {"k": 3, "a": 2, "M": 3}, 40)
    assert report.passed
    lhs, _ = series_sides(lookup("agbig"), {"k": 3, "a": 2, "M": 3}, 40)
    assert lhs[10].coeffs == (10, 4, 2, 1)


def test_shift_is_the_marked_identity_with_w_replaced():
    # RR1 with 11 replaced by 28 is the marked RR1 at M = 11 with w = q^17
    lhs, rhs = series_sides(lookup("shift-rr"), {"M": 11, "N": 28}, 60)
    marked_lhs, _ = series_sides(lookup("rr1x"), {"M": 11}, 60)
    assert lhs == rhs == marked_lhs.subs_w_qpower(17)


def test_qeuler_at_q_one_is_euler():
    lhs, rhs = series_sides(lookup("qeuler"), {"q": 1}, 30)
    assert lhs == rhs
    assert lhs.q_coefficients() == [len(partitions_where(n, parts_in({1}, 2))) for n in range(31)]


# cross consistency ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "spec", [s for s in registry() if s.analytic is not None], ids=lambda s: s.id
)
def test_counts_equal_series_coefficients(spec):
    analytic = lookup(spec.analytic)
    params = spec.sweep()[0]
    n_max = 18
    lhs, _ = series_sides(analytic, {k: params[k] for k in analytic.params}, n_max)
    for n, (left, right) in enumerate(count_table(spec, params, n_max)):
        for k in set(left) | set(right) | set(range(len(lhs[n]))):
            assert left[k] == right[k] == lhs.coefficient(n, k), (n, k)


# failure reports --------------------------------------------------------------------------

def _wrong_pair():
    # a deliberately wrong statistic: the largest part divided by M
    pair = CombinatorialPair(
        left=lambda p: RR1_PARTS,
        left_key=lambda lam, p: lam.count(p["M"]),
        right=lambda p: GAP2,
        right_key=lambda lam, p: lam[0] // p["M"] if lam else 0,
    )
    return IdentitySpec("wrong", "wrong", "combinatorial", params=("M",), pair=pair)


def test_failure_carries_minimal_witness():
    report = verify_combinatorial(_wrong_pair(), {"M": 4}, 20)
    assert report.status == "FAIL"
    w = report.witness
    # brute force the first disagreement
    first = None
    for n in range(21):
        left = partitions_where(n, parts_in({1, 4}, 5))
        right = partitions_where(n, gap_at_least(2))
        ks = {p.count(4) for p in left} | {(p[0] // 4 if p else 0) for p in right}
        for k in sorted(ks):
            a = sum(1 for p in left if p.count(4) == k)
            b = sum(1 for p in right if (p[0] // 4 if p else 0) == k)
            if a != b:
                first = (n, k)
                break
        if first:
            break
    assert (w["n"], w["k"]) == first
    assert len(w["left"]) != len(w["right"])
    json.dumps(report.as_json())


def test_series_failure_names_the_coefficient():
    spec = IdentitySpec(
        "bad", "bad", "series",
        lhs=lambda p, c: TruncatedSeries.one(c).div_one_minus(1),
        rhs=lambda p, c: TruncatedSeries.one(c).div_one_minus(1).div_one_minus(2),
    )
    report = verify_series(spec, {}, 10)
    assert report.status == "FAIL"
    assert report.witness == {"n": 2, "w_exponent": 0, "lhs": 1, "rhs": 2}


def test_report_json_fields():
    payload = verify("rr1", {}, 10).as_json()
    assert set(payload) >= {"id", "params", "status", "witness", "elapsed_ms"}
    assert payload["status"] == "PASS"


# witness sets ------------------------------------------------------------------------------

def test_witness_sets_are_in_canonical_order():
    left, right = witness_sets(lookup("rrx2comb1"), {"M": 7}, 22, 2)
    assert left == sorted(left, reverse=True)
    assert right == sorted(right, reverse=True)


def test_witness_needs_a_partition_theorem():
    with pytest.raises(ValueError):
        witness_sets(lookup("rr1"), {}, 5, 0)


# marked sub-partitions -------------------------------------------------------------------------

@pytest.mark.parametrize("lam", [(6, 4), (6, 1), (4, 1, 1, 1), (1, 1), (9,)])
def test_marked_sum_over_rr1_parts(lam):
    assert verify_marked_sum(Partition(lam), RR1_PARTS, 30) == []


def test_embedding_series_against_oracle():
    lam = (4, 1)
    s = embedding_series(Partition(lam), RR1_PARTS, 18)
    for n in range(19):
        pool = partitions_where(n, parts_in({1, 4}, 5))
        for k in range(5):
            assert s.coefficient(n, k) == sum(1 for p in pool if copies(lam, p) == k)


def test_single_part_sub_partition_is_ordinary_marking():
    lhs, _ = series_sides(lookup("rr1x"), {"M": 6}, 30)
    assert embedding_product(Partition((6,)), RR1_PARTS, 30) == lhs
    assert embedding_series(Partition((6,)), RR1_PARTS, 30) == lhs


def test_no_copy_slice():
    lam = Partition((6, 4, 4))
    s = no_copy_series(lam, RR1_PARTS, 30)
    expected = [sum(1 for p in partitions_where(n, parts_in({1, 4}, 5)) if copies(lam, p) == 0)
                for n in range(31)]
    assert s.q_coefficients() == expected


def test_two_sub_partitions_of_seven_have_equal_tables():
    assert verify("oddcor", {"lam": Partition((6, 1)), "lam2": Partition((4, 1, 1, 1)),
                             "family": "rr1"}, 30).passed


def test_marked_sum_requires_parts_in_the_set():
    with pytest.raises(ParameterError):
        verify_marked_sum(Partition((2,)), RR1_PARTS, 10)


# inequality -------------------------------------------------------------------------------------

def test_inequality_smallest_case():
    ok, witness, note = verify_inequality(3, Partition((1, 1, 1)), Partition((3,)), 40)
    assert ok, note


def test_inequality_seven():
    ok, _, note = verify_inequality(7, Partition((6, 1)), Partition((7,)), 40)
    assert ok, note


def test_inequality_other_reading_differs():
    # the (q^2;q)_{k-1} reading is a different series, so the check can tell them apart
    assert first_difference(inequality_series(5, 30), inequality_series(5, 30, shifted=True)) is not None


def test_inequality_rejects_small_m():
    with pytest.raises(ParameterError):
        verify_inequality(2, Partition((1, 1)), Partition((2,)), 10)


# suite plumbing ------------------------------------------------------------------------------------

def test_suite_jobs_cover_registry():
    jobs = suite_jobs()
    assert {spec.id for spec, _ in jobs} == {s.id for s in registry()}
    assert all(spec.check_params(params) is not None for spec, params in jobs)
