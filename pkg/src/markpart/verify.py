"""Checking identities: coefficientwise for series, count by count for partition theorems."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from typing import Any, Mapping

from .identities import FAMILIES, IdentitySpec, lookup, registry
from .partitions import ConstraintSet, Partition, embed_count, enumerate_partitions
from .qseries import (
    ParameterError,
    ProductSpec,
    TruncatedSeries,
    first_difference,
    inverse_pochhammer,
    marked_product,
    marker_factor,
)

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class VerificationReport:
    id: str
    params: dict
    kind: str
    size: int
    status: str
    witness: Any = None
    elapsed_ms: float = 0.0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "kind": self.kind,
            "size": self.size,
            "status": self.status,
            "witness": _plain(self.witness),
            "elapsed_ms": round(self.elapsed_ms, 3),
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json())


def _plain(v: Any) -> Any:
    if isinstance(v, Partition):
        return list(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def _report(spec: IdentitySpec, params: dict, size: int, start: float, ok: bool,
            witness: Any = None, note: str = "") -> VerificationReport:
    return VerificationReport(
        spec.id, dict(params), spec.kind, size, PASS if ok else FAIL, witness,
        (time.perf_counter() - start) * 1000, note,
    )


# series ----------------------------------------------------------------------


def series_sides(spec: IdentitySpec, params: Mapping, cutoff: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    p = spec.check_params(params)
    return spec.lhs(p, cutoff), spec.rhs(p, cutoff)


def verify_series(spec: IdentitySpec, params: Mapping, cutoff: int | None = None) -> VerificationReport:
    """Exact coefficientwise comparison up to ``q^cutoff``."""
    cutoff = spec.size if cutoff is None else cutoff
    start = time.perf_counter()
    p = spec.check_params(params)
    lhs, rhs = spec.lhs(p, cutoff), spec.rhs(p, cutoff)
    diff = first_difference(lhs, rhs)
    if diff is None:
        return _report(spec, p, cutoff, start, True)
    n, e, a, b = diff
    witness = {"n": n, "w_exponent": e, "lhs": a, "rhs": b}
    return _report(spec, p, cutoff, start, False, witness,
                   f"first mismatch at q^{n} w^{e}: {a} != {b}")


# combinatorial ---------------------------------------------------------------


def _tally(family: ConstraintSet, key, p: Mapping, n: int) -> dict[int, list[Partition]]:
    out: dict[int, list[Partition]] = {}
    for lam in enumerate_partitions(n, family):
        k = key(lam, p)
        if k is not None:
            out.setdefault(k, []).append(lam)
    return out


def witness_sets(spec: IdentitySpec, params: Mapping, n: int, k: int) -> tuple[list[Partition], list[Partition]]:
    """The partitions of ``n`` with statistic ``k`` on each side, in canonical order."""
    if spec.pair is None:
        raise ValueError(f"{spec.id} is not a partition theorem")
    p = spec.check_params(params)
    pair = spec.pair
    left = _tally(pair.left(p), pair.left_key, p, n).get(k, [])
    right = _tally(pair.right(p), pair.right_key, p, n).get(k, [])
    return left, right


def count_table(spec: IdentitySpec, params: Mapping, n_max: int) -> list[tuple[Counter, Counter]]:
    """Per weight ``n``, the statistic distributions of both sides."""
    p = spec.check_params(params)
    pair = spec.pair
    rows = []
    for n in range(n_max + 1):
        left = Counter({k: len(v) for k, v in _tally(pair.left(p), pair.left_key, p, n).items()})
        right = Counter({k: len(v) for k, v in _tally(pair.right(p), pair.right_key, p, n).items()})
        rows.append((left, right))
    return rows


def verify_combinatorial(spec: IdentitySpec, params: Mapping, n_max: int | None = None) -> VerificationReport:
    """Compare the statistic distributions for every ``n <= n_max``.

    On failure the witness is the smallest ``(n, k)`` with unequal counts and
    both partition sets there.
    """
    n_max = spec.size if n_max is None else n_max
    start = time.perf_counter()
    p = spec.check_params(params)
    pair = spec.pair
    for n in range(n_max + 1):
        left = _tally(pair.left(p), pair.left_key, p, n)
        right = _tally(pair.right(p), pair.right_key, p, n)
        bad = [k for k in set(left) | set(right) if len(left.get(k, ())) != len(right.get(k, ()))]
        if bad:
            k = min(bad)
            witness = {
                "n": n,
                "k": k,
                pair.left_label: [list(x) for x in left.get(k, [])],
                pair.right_label: [list(x) for x in right.get(k, [])],
            }
            return _report(spec, p, n_max, start, False, witness,
                           f"counts differ at n={n}, k={k}")
    return _report(spec, p, n_max, start, True)


# marked sub-partition sums ----------------------------------------------------


def embedding_series(lam: Partition, family: ConstraintSet, cutoff: int) -> TruncatedSeries:
    """``sum_mu q^|mu| w^E(mu)`` by enumeration, ``E`` = copies of ``lam`` in ``mu``."""
    coeffs: dict[tuple[int, int], int] = {}
    for n in range(cutoff + 1):
        for mu in enumerate_partitions(n, family):
            key = (n, embed_count(lam, mu))
            coeffs[key] = coeffs.get(key, 0) + 1
    return TruncatedSeries.from_coefficients(cutoff, coeffs)


def embedding_product(lam: Partition, family: ConstraintSet, cutoff: int) -> TruncatedSeries:
    """``(1 - q^M)/(1 - w q^M) * prod_{A} 1/(1 - q^A)`` with ``M = |lam|``."""
    m = sum(lam)
    base = marked_product(ProductSpec.from_constraints(family), cutoff)
    return base.mul_one_minus(m).div_one_minus(m, 1)


def no_copy_series(lam: Partition, family: ConstraintSet, cutoff: int) -> TruncatedSeries:
    """Generating function of partitions avoiding a full copy of ``lam``.

    Telescoped over the first distinct part ``B_i`` of ``lam`` whose
    multiplicity runs short: parts ``B_j`` (``j < i``) appear at least ``m_j``
    times, ``B_i`` fewer than ``m_i`` times, later ones freely.
    """
    mult = Partition(lam).multiplicities()
    distinct = sorted(mult)
    rest = marked_product(
        ProductSpec(allowed=lambda a: family.allows(a) and a not in mult), cutoff
    )
    total = TruncatedSeries.zero(cutoff)
    for i in range(len(distinct)):
        term = rest
        for j, bj in enumerate(distinct):
            if j < i:
                term = term.shift(mult[bj] * bj).div_one_minus(bj)
            elif j == i:
                if mult[bj] * bj <= cutoff:
                    term = term.mul_one_minus(mult[bj] * bj)
                term = term.div_one_minus(bj)
            else:
                term = term.div_one_minus(bj)
        total = total + term
    return total


def verify_marked_sum(lam: Partition, family: ConstraintSet, cutoff: int) -> list[str]:
    """Problems found comparing enumeration, product form and the telescoped ``w^0`` slice."""
    lam = Partition(lam)
    if not lam or not family.admits(lam) or not family.multiplicative:
        raise ParameterError("lam must be a non-empty partition into allowed parts of a product family")
    enumerated = embedding_series(lam, family, cutoff)
    product = embedding_product(lam, family, cutoff)
    problems = []
    diff = first_difference(enumerated, product)
    if diff is not None:
        problems.append(f"enumeration vs product at q^{diff[0]} w^{diff[1]}: {diff[2]} != {diff[3]}")
    zero = no_copy_series(lam, family, cutoff).q_coefficients()
    if enumerated.w_slice(0) != zero:
        n = next(i for i, (a, b) in enumerate(zip(enumerated.w_slice(0), zero)) if a != b)
        problems.append(f"no-copy slice vs telescoped sum at q^{n}")
    if product.w_slice(0) != zero:
        problems.append("product w^0 slice vs telescoped sum")
    return problems


def _family_of(spec: IdentitySpec, p: Mapping) -> ConstraintSet:
    return FAMILIES[p.get("family", "rr1")]


# inequality --------------------------------------------------------------------


def inequality_series(m: int, cutoff: int, *, shifted: bool = False) -> TruncatedSeries:
    """``(q - q^(M+1))/(1 - w q^M) + sum_{k>=2} q^(k^2) [M]/(1 - w q^M) / (q^2;q)_{k-2}``.

    ``shifted`` uses ``(q^2;q)_{k-1}`` instead, the other reading of the display.
    """
    head = (TruncatedSeries.monomial(cutoff, 1) - TruncatedSeries.monomial(cutoff, m + 1))
    head = head.div_one_minus(m, 1)
    tail = TruncatedSeries.zero(cutoff)
    k = 2
    while k * k <= cutoff:
        tail = tail + inverse_pochhammer(2, 1, k - 1 if shifted else k - 2, cutoff).shift(k * k)
        k += 1
    return head + marker_factor(tail, m)


def verify_inequality(m: int, lam: Partition, theta: Partition, cutoff: int) -> tuple[bool, Any, str]:
    rr1, rr2 = FAMILIES["rr1"], FAMILIES["rr2"]
    if m < 3:
        raise ParameterError("the inequality needs M >= 3")
    if sum(lam) != m or sum(theta) != m or not rr1.admits(lam) or not rr2.admits(theta):
        raise ParameterError("need lam |- M in parts 1, 4 (mod 5) and theta |- M in parts 2, 3 (mod 5)")
    a = embedding_series(Partition(lam), rr1, cutoff)
    b = embedding_series(Partition(theta), rr2, cutoff)
    diff = a - b
    for n, row in enumerate(diff.rows):
        for k, c in enumerate(row):
            if c < 0:
                return False, {"n": n, "k": k, "difference": c}, "E_theta exceeds E_lam"
    display = inequality_series(m, cutoff)
    mismatch = first_difference(diff, display)
    if mismatch is None:
        return True, None, ""
    note = f"difference series mismatch at q^{mismatch[0]} w^{mismatch[1]}"
    if first_difference(diff, inequality_series(m, cutoff, shifted=True)) is None:
        note += "; the (q^2;q)_{k-1} reading matches instead"
    return False, {"n": mismatch[0], "k": mismatch[1], "enumerated": mismatch[2],
                   "display": mismatch[3]}, note


# dispatch --------------------------------------------------------------------


def verify(identity: IdentitySpec | str, params: Mapping | None = None, size: int | None = None) -> VerificationReport:
    spec = lookup(identity) if isinstance(identity, str) else identity
    params = dict(params or {})
    if spec.kind == "series":
        return verify_series(spec, params, size)
    if spec.kind == "combinatorial":
        return verify_combinatorial(spec, params, size)
    size = spec.size if size is None else size
    start = time.perf_counter()
    p = spec.check_params(params)
    if spec.kind == "marked-sum":
        problems = verify_marked_sum(p["lam"], _family_of(spec, p), size)
        return _report(spec, p, size, start, not problems, problems or None, "; ".join(problems))
    if spec.kind == "inequality":
        ok, witness, note = verify_inequality(p["M"], p["lam"], p["theta"], size)
        return _report(spec, p, size, start, ok, witness, note)
    raise ValueError(f"unknown identity kind {spec.kind!r}")


def suite_jobs(ids: list[str] | None = None) -> list[tuple[IdentitySpec, dict]]:
    specs = [lookup(i) for i in ids] if ids else list(registry())
    return [(spec, params) for spec in specs for params in spec.sweep()]


def run_suite(ids: list[str] | None = None) -> list[VerificationReport]:
    return [verify(spec, params) for spec, params in suite_jobs(ids)]
