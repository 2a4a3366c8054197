"""Registry of the identities and partition theorems the engine checks.

Each entry names its parameters, the hypothesis they must satisfy, and either
two series builders (checked coefficientwise) or two partition families with
a statistic on each side (checked count by count).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Mapping

from . import partitions as P
from .durfee import ag_statistic, is_admissible
from .partitions import ConstraintSet, Partition, Statistic, embed_count, mark_statistic
from .qseries import (
    ParameterError,
    ProductSpec,
    TruncatedSeries,
    _geometric_block,
    ag_product,
    ag_residue_ok,
    inverse_pochhammer,
    marked_AG,
    marked_expansion,
    marked_product,
    marker_factor,
    multisum_F,
    pochhammer,
)

Params = Mapping[str, Any]

AG_GRID = ((1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 2), (3, 3))

FAMILIES: dict[str, ConstraintSet] = {
    "rr1": P.RR1_PARTS,
    "rr2": P.RR2_PARTS,
    "odd": P.ODD,
    "all": P.ALL,
}


@dataclass(frozen=True)
class CombinatorialPair:
    """Two partition families whose statistics are equidistributed.

    A key function returns the statistic value, or ``None`` to leave the
    partition out of the count.
    """

    left: Callable[[Params], ConstraintSet]
    left_key: Callable[[Partition, Params], int | None]
    right: Callable[[Params], ConstraintSet]
    right_key: Callable[[Partition, Params], int | None]
    left_label: str = "left"
    right_label: str = "right"


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    title: str
    kind: str  # series | combinatorial | marked-sum | inequality
    params: tuple[str, ...] = ()
    hypothesis: str = ""
    valid: Callable[[Params], bool] = lambda p: True
    lhs: Callable[[Params, int], TruncatedSeries] | None = None
    rhs: Callable[[Params, int], TruncatedSeries] | None = None
    pair: CombinatorialPair | None = None
    sweep: Callable[[], list[dict]] = lambda: [{}]
    size: int = 40
    analytic: str | None = None
    aliases: tuple[str, ...] = field(default=())

    def check_params(self, params: Params) -> dict:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise ValueError(f"{self.id} needs parameter(s) {', '.join(missing)}")
        clean = {p: params[p] for p in self.params}
        if not self.valid(clean):
            raise ParameterError(f"{self.id}: hypothesis violated, need {self.hypothesis}")
        return clean


# helpers --------------------------------------------------------------------


def _mono(cutoff: int, n: int, e: int = 0, c: int = 1) -> TruncatedSeries:
    return TruncatedSeries.monomial(cutoff, n, e, c)


def _sum_over_j(cutoff: int, term: Callable[[int], TruncatedSeries | None], start: int = 0):
    total = TruncatedSeries.zero(cutoff)
    j = start
    while True:
        t = term(j)
        if t is None:
            return total
        total = total + t
        j += 1


def _residue_product(modulus: int, residues, cutoff: int, marked: int | None = None):
    return marked_product(
        ProductSpec.residues(modulus, residues, {marked: 1} if marked else None), cutoff
    )


def _rr_sum(cutoff: int, linear: int) -> TruncatedSeries:
    def term(k):
        e = k * k + linear * k
        if e > cutoff:
            return None
        return inverse_pochhammer(1, 1, k, cutoff).shift(e)

    return _sum_over_j(cutoff, term)


def _gg_sum(cutoff: int, linear: int) -> TruncatedSeries:
    # sum_n q^(n^2 + linear*n) (-q; q^2)_n / (q^2; q^2)_n
    def term(n):
        e = n * n + linear * n
        if e > cutoff:
            return None
        num = pochhammer(1, 2, n, cutoff, coeff=-1)
        return (num * inverse_pochhammer(2, 2, n, cutoff)).shift(e)

    return _sum_over_j(cutoff, term)


def _marked_tail(cutoff: int, exponent: Callable[[int], int], m: int,
                 inner: Callable[[int], TruncatedSeries]) -> TruncatedSeries:
    """``sum_{k>=2} q^exponent(k) * inner(k) * [M]/(1 - w q^M)``."""

    def term(k):
        e = exponent(k)
        if e > cutoff:
            return None
        return inner(k).shift(e)

    return marker_factor(_sum_over_j(cutoff, term, start=2), m)


# series builders ------------------------------------------------------------


def rr1x_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    m = p["M"]
    # 1 + q(1 + q + ... + q^(M-2) + x q^(M-1)) / (1 - x q^M)
    head = (_geometric_block(m - 1, cutoff) + _mono(cutoff, m - 1, 1)).shift(1)
    tail = _marked_tail(cutoff, lambda k: k * k, m,
                        lambda k: inverse_pochhammer(2, 1, k - 1, cutoff))
    return 1 + head.div_one_minus(m, 1) + tail


def rr2x_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    m = p["M"]
    # 1 + q^2([M-2] + x q^(M-2) + q^(M-1)) / (1 - x q^M)
    head = (
        _geometric_block(m - 2, cutoff) + _mono(cutoff, m - 2, 1) + _mono(cutoff, m - 1)
    ).shift(2)
    tail = _marked_tail(cutoff, lambda k: k * k + k, m,
                        lambda k: inverse_pochhammer(2, 1, k - 1, cutoff))
    return 1 + head.div_one_minus(m, 1) + tail


def euler_marked_lhs(p: Params, cutoff: int) -> TruncatedSeries:
    return _residue_product(2, {1}, cutoff, p["M"])


def euler_marked_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    m = p["M"]
    # 1 + (q + ... + q^(M-1) + w q^M) / (1 - w q^M)
    head = _geometric_block(m - 1, cutoff).shift(1) + _mono(cutoff, m, 1)
    tail = _marked_tail(cutoff, lambda j: j * (j + 1) // 2, m,
                        lambda j: inverse_pochhammer(2, 1, j - 1, cutoff))
    return 1 + head.div_one_minus(m, 1) + tail


def _gg_tail_factor(cutoff: int, j: int) -> TruncatedSeries:
    # (-q^3; q^2)_{j-1} / (q^4; q^2)_{j-1}
    return pochhammer(3, 2, j - 1, cutoff, coeff=-1) * inverse_pochhammer(4, 2, j - 1, cutoff)


def gg1x_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    m = p["M"]
    # 1 + (q[M-1] + w q^M) / (1 - w q^M)
    head = _geometric_block(m - 1, cutoff).shift(1) + _mono(cutoff, m, 1)
    tail = _marked_tail(cutoff, lambda j: j * j, m, lambda j: _gg_tail_factor(cutoff, j))
    return 1 + head.div_one_minus(m, 1) + tail


def gg2x_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    m = p["M"]
    # 1 + (q^3 + ... + q^(M-1) + w q^M + q^(M+1) + q^(M+2)) / (1 - w q^M)
    head = TruncatedSeries.zero(cutoff)
    for e in range(3, m):
        head = head + _mono(cutoff, e)
    head = head + _mono(cutoff, m, 1) + _mono(cutoff, m + 1) + _mono(cutoff, m + 2)
    tail = _marked_tail(cutoff, lambda j: j * j + 2 * j, m, lambda j: _gg_tail_factor(cutoff, j))
    return 1 + head.div_one_minus(m, 1) + tail


def shift23_lhs(p: Params, cutoff: int) -> TruncatedSeries:
    # 1 / ((1-q^2)(1-q^3)(q^6;q^5)_inf (q^9;q^5)_inf)
    spec = ProductSpec(allowed=lambda m: m in (2, 3) or (m > 5 and m % 5 in (1, 4)))
    return marked_product(spec, cutoff)


def shift23_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    one_plus_q2 = 1 + _mono(cutoff, 2)

    def term(k):
        e = k * k
        if e > cutoff:
            return None
        return inverse_pochhammer(2, 1, k - 1, cutoff).shift(e)

    head = (1 + _mono(cutoff, 1)).shift(2).div_one_minus(3)
    tail = (_sum_over_j(cutoff, term, start=2) * one_plus_q2).div_one_minus(3)
    return 1 + head + tail


def _qint_value(m: int, q: int) -> int:
    return sum(q**i for i in range(m))


def qeuler_lhs(p: Params, cutoff: int) -> TruncatedSeries:
    """``prod_n 1/(1 - t^[2n+1]_q)`` as a series in t (the series variable)."""
    q = p["q"]
    result = TruncatedSeries.one(cutoff)
    n = 0
    while (e := _qint_value(2 * n + 1, q)) <= cutoff:
        result = result.div_one_minus(e)
        n += 1
        if q == 0:
            break
    return result


def qeuler_rhs(p: Params, cutoff: int) -> TruncatedSeries:
    q = p["q"]
    total = TruncatedSeries.one(cutoff)
    m = 1
    while (size := _qint_value(m, q)) <= cutoff:
        term = TruncatedSeries.monomial(cutoff, size)
        top = q**m * size
        if top <= cutoff:
            term = term.mul_one_minus(top)
        term = term.div_one_minus(size)
        for k in range(1, m):
            s = _qint_value(k, q)
            e = (q**k + 1) * s
            if e <= cutoff:
                term = term.mul_one_minus(e)
            term = term.div_one_minus(s)
        total = total + term
        m += 1
    return total


# alpha families for the general marked expansion ---------------------------

def _alpha_rr1(j, cutoff):
    return _mono(cutoff, j * j) if j * j <= cutoff else None


def _alpha_rr2(j, cutoff):
    return _mono(cutoff, j * j + j) if j * j + j <= cutoff else None


def _alpha_euler(j, cutoff):
    e = j * (j + 1) // 2
    return _mono(cutoff, e) if e <= cutoff else None


def _alpha_gg(j, cutoff):
    return pochhammer(1, 2, j, cutoff, coeff=-1).shift(j * j) if j * j <= cutoff else None


def _alpha_largest(j, cutoff):
    return _mono(cutoff, j) if j <= cutoff else None


def _alpha_durfee(j, cutoff):
    return inverse_pochhammer(1, 1, j, cutoff).shift(j * j) if j * j <= cutoff else None


ALPHA_FAMILIES = {
    # name: (alpha_j builder, base of the q-Pochhammer symbols)
    "rr1": (_alpha_rr1, 1),
    "rr2": (_alpha_rr2, 1),
    "euler": (_alpha_euler, 1),
    "gg": (_alpha_gg, 2),
    "largest-part": (_alpha_largest, 1),
    "durfee": (_alpha_durfee, 1),
}


def alpha_sequence(family: str, cutoff: int) -> list[TruncatedSeries]:
    build, _ = ALPHA_FAMILIES[family]
    out = []
    j = 0
    while (a := build(j, cutoff)) is not None:
        out.append(a)
        j += 1
    return out


def _mainprop_lhs(family: str):
    def lhs(p: Params, cutoff: int) -> TruncatedSeries:
        m = p["M"]
        _, base = ALPHA_FAMILIES[family]
        alpha = alpha_sequence(family, cutoff)
        total = TruncatedSeries.zero(cutoff)
        for j, a in enumerate(alpha):
            total = total + a * inverse_pochhammer(base, base, j, cutoff)
        return total.mul_one_minus(base * m).div_one_minus(base * m, 1)

    return lhs


def _mainprop_rhs(family: str):
    def rhs(p: Params, cutoff: int) -> TruncatedSeries:
        _, base = ALPHA_FAMILIES[family]
        return marked_expansion(alpha_sequence(family, cutoff), p["M"], cutoff, base)

    return rhs


# parameter predicates --------------------------------------------------------

def _in(mod: int, residues, *, minimum: int = 1):
    return lambda p: p["M"] >= minimum and p["M"] % mod in residues


def _ag_valid(p: Params) -> bool:
    return p["k"] >= 1 and 0 <= p["a"] <= p["k"]


def _agbig_valid(p: Params) -> bool:
    return _ag_valid(p) and p["M"] >= 1 and ag_residue_ok(p["k"], p["a"], p["M"])


def _over(family: ConstraintSet, key: str):
    def ok(p: Params) -> bool:
        lam = p[key]
        return len(lam) > 0 and family.admits(lam)

    return ok


def _grid(values, **fixed):
    return lambda: [dict(fixed, M=m) for m in values]


def _in_class(mod, residues, upto, minimum=1):
    return [m for m in range(minimum, upto + 1) if m % mod in residues]


@lru_cache(maxsize=None)
def partitions_of_into(m: int, family: str) -> tuple[Partition, ...]:
    return P.enumerate_partitions(m, FAMILIES[family])


# combinatorial keys ------------------------------------------------------------

def _count_m(mu: Partition, p: Params) -> int:
    return mu.count(p["M"])


def _everything(mu: Partition, p: Params) -> int:
    return 0


def _stat(stat: Statistic, m_key: str = "M"):
    def key(lam: Partition, p: Params) -> int:
        m = p[m_key] if m_key in p else sum(p["lam"])
        return mark_statistic(stat, lam, m)

    return key


def _weight_stat(stat: Statistic, weight_of: str):
    def key(lam: Partition, p: Params) -> int:
        return mark_statistic(stat, lam, sum(p[weight_of]))

    return key


def _shift(stat: Statistic):
    def key(lam: Partition, p: Params) -> int | None:
        return 0 if P.shift_statistic(stat, lam, p.get("M"), p.get("N")) else None

    return key


def _embed(key_name: str):
    return lambda mu, p: embed_count(p[key_name], mu)


def _ag_key(lam: Partition, p: Params) -> int | None:
    if not is_admissible(lam, p["k"], p["a"]):
        return None
    return ag_statistic(lam, p["M"], p["k"], p["a"])


def _ag_family(p: Params) -> ConstraintSet:
    mod = 2 * p["k"] + 3
    bad = {0, (p["k"] + 1 - p["a"]) % mod, (-(p["k"] + 1 - p["a"])) % mod}
    return ConstraintSet.residue_classes(mod, set(range(mod)) - bad)


def _const(c: ConstraintSet):
    return lambda p: c


# registry --------------------------------------------------------------------


def _series_entries() -> list[IdentitySpec]:
    rr1_class = _in_class(5, {1, 4}, 30)
    rr2_class = _in_class(5, {2, 3}, 30, minimum=2)
    entries = [
        IdentitySpec(
            "rr1", "first Rogers-Ramanujan identity", "series",
            lhs=lambda p, c: _residue_product(5, {1, 4}, c),
            rhs=lambda p, c: _rr_sum(c, 0), size=80,
        ),
        IdentitySpec(
            "rr2", "second Rogers-Ramanujan identity", "series",
            lhs=lambda p, c: _residue_product(5, {2, 3}, c),
            rhs=lambda p, c: _rr_sum(c, 1), size=80,
        ),
        IdentitySpec(
            "rr1x", "first Rogers-Ramanujan identity with parts M marked", "series",
            params=("M",), hypothesis="M >= 1 and M = 1 or 4 (mod 5)",
            valid=_in(5, {1, 4}),
            lhs=lambda p, c: _residue_product(5, {1, 4}, c, p["M"]), rhs=rr1x_rhs,
            sweep=_grid(rr1_class), size=60,
        ),
        IdentitySpec(
            "rr2x", "second Rogers-Ramanujan identity with parts M marked", "series",
            params=("M",), hypothesis="M >= 2 and M = 2 or 3 (mod 5)",
            valid=_in(5, {2, 3}, minimum=2),
            lhs=lambda p, c: _residue_product(5, {2, 3}, c, p["M"]), rhs=rr2x_rhs,
            sweep=_grid(rr2_class), size=60,
        ),
    ]
    for family, (_, base) in ALPHA_FAMILIES.items():
        entries.append(
            IdentitySpec(
                f"mainprop-{family}",
                f"general marked expansion, alpha family '{family}'"
                + (" (base q^2, marked part 2M)" if base == 2 else ""),
                "series", params=("M",), hypothesis="M >= 1", valid=lambda p: p["M"] >= 1,
                lhs=_mainprop_lhs(family), rhs=_mainprop_rhs(family),
                sweep=_grid(range(1, 21)), size=50,
            )
        )
    entries += [
        IdentitySpec(
            "euler-marked", "Euler odd = distinct with odd part M marked", "series",
            params=("M",), hypothesis="M odd and positive", valid=_in(2, {1}),
            lhs=euler_marked_lhs, rhs=euler_marked_rhs,
            sweep=_grid(_in_class(2, {1}, 29)), size=60,
        ),
        IdentitySpec(
            "gg1", "first Gollnitz-Gordon identity", "series",
            lhs=lambda p, c: _residue_product(8, {1, 4, 7}, c),
            rhs=lambda p, c: _gg_sum(c, 0), size=60,
        ),
        IdentitySpec(
            "gg2", "second Gollnitz-Gordon identity", "series",
            lhs=lambda p, c: _residue_product(8, {3, 4, 5}, c),
            rhs=lambda p, c: _gg_sum(c, 2), size=60,
        ),
        IdentitySpec(
            "gg1x", "first Gollnitz-Gordon identity with parts M marked", "series",
            params=("M",), hypothesis="M >= 1 and M = 1, 4 or 7 (mod 8)",
            valid=_in(8, {1, 4, 7}),
            lhs=lambda p, c: _residue_product(8, {1, 4, 7}, c, p["M"]), rhs=gg1x_rhs,
            sweep=_grid(_in_class(8, {1, 4, 7}, 29)), size=60,
        ),
        IdentitySpec(
            "gg2x", "second Gollnitz-Gordon identity with parts M marked", "series",
            params=("M",), hypothesis="M >= 3 and M = 3, 4 or 5 (mod 8)",
            valid=_in(8, {3, 4, 5}, minimum=3),
            lhs=lambda p, c: _residue_product(8, {3, 4, 5}, c, p["M"]), rhs=gg2x_rhs,
            sweep=_grid(_in_class(8, {3, 4, 5}, 29)), size=60,
        ),
        IdentitySpec(
            "ag", "Andrews-Gordon identity (product = multisum)", "series",
            params=("k", "a"), hypothesis="k >= 1 and 0 <= a <= k", valid=_ag_valid,
            lhs=lambda p, c: ag_product(p["k"], p["a"], c),
            rhs=lambda p, c: multisum_F(p["k"], p["a"], c),
            sweep=lambda: [{"k": k, "a": a} for k, a in AG_GRID], size=40,
        ),
        IdentitySpec(
            "agbig", "Andrews-Gordon identity with parts M marked", "series",
            params=("k", "a", "M"),
            hypothesis="0 <= a <= k and M not congruent to 0, +-(k+1-a) mod 2k+3",
            valid=_agbig_valid,
            lhs=lambda p, c: ag_product(p["k"], p["a"], c, marked=p["M"]),
            rhs=lambda p, c: marked_AG(p["k"], p["a"], p["M"], c),
            sweep=lambda: [
                {"k": k, "a": a, "M": m}
                for k, a in AG_GRID
                for m in range(1, 21)
                if ag_residue_ok(k, a, m)
            ],
            size=40,
        ),
        IdentitySpec(
            "shift-rr", "first Rogers-Ramanujan identity with part M replaced by N",
            "series", params=("M", "N"),
            hypothesis="M = 1 or 4 (mod 5), N > M, N not 1 or 4 (mod 5)",
            valid=lambda p: p["M"] >= 1 and p["M"] % 5 in (1, 4)
            and p["N"] > p["M"] and p["N"] % 5 not in (1, 4),
            lhs=lambda p, c: marked_product(
                ProductSpec.residues(5, {1, 4}, exclude={p["M"]}, extra={p["N"]}), c),
            rhs=lambda p, c: rr1x_rhs(p, c).subs_w_qpower(p["N"] - p["M"]),
            sweep=lambda: [{"M": m, "N": n} for m in (1, 4, 6, 11) for n in (m + 1, m + 3, 28)
                           if n % 5 not in (1, 4) and n > m],
            size=60,
        ),
        IdentitySpec(
            "shift-euler", "Euler odd = distinct with odd part M replaced by even N",
            "series", params=("M", "N"), hypothesis="M odd, N even, N > M",
            valid=lambda p: p["M"] >= 1 and p["M"] % 2 == 1 and p["N"] % 2 == 0 and p["N"] > p["M"],
            lhs=lambda p, c: marked_product(
                ProductSpec.residues(2, {1}, exclude={p["M"]}, extra={p["N"]}), c),
            rhs=lambda p, c: euler_marked_rhs(p, c).subs_w_qpower(p["N"] - p["M"]),
            sweep=lambda: [{"M": m, "N": n} for m in (1, 3, 5, 9) for n in (m + 1, m + 5, 20)],
            size=60,
        ),
        IdentitySpec(
            "shift23", "first Rogers-Ramanujan identity with parts 1, 4 replaced by 2, 3",
            "series", lhs=shift23_lhs, rhs=shift23_rhs, size=60,
        ),
        IdentitySpec(
            "qeuler", "q-analogue of Euler's odd = distinct theorem (series in t)", "series",
            params=("q",), hypothesis="q a positive integer", valid=lambda p: p["q"] >= 1,
            lhs=qeuler_lhs, rhs=qeuler_rhs,
            sweep=lambda: [{"q": 2}, {"q": 3}], size=50,
        ),
    ]
    return entries


def _combinatorial_entries() -> list[IdentitySpec]:
    rr1_m = _in_class(5, {1, 4}, 12)
    rr2_m = _in_class(5, {2, 3}, 12, minimum=2)
    odd_m = _in_class(2, {1}, 12)

    def marked(left, stat, right, **kw):
        return CombinatorialPair(
            left=_const(left), left_key=_count_m,
            right=_const(right), right_key=_stat(stat),
            left_label=kw.get("left_label", "exactly k parts equal to M"),
            right_label=kw.get("right_label", stat.value),
        )

    def ag_sweep():
        return [
            {"k": k, "a": a, "M": m}
            for k, a in AG_GRID
            for m in range(1, 13)
            if ag_residue_ok(k, a, m)
        ]

    def extend_sweep(family):
        return lambda: [
            {"lam": lam}
            for m in range(1, 13)
            for lam in partitions_of_into(m, family)
        ]

    def oddcor_sweep():
        out = []
        for family in ("rr1", "rr2", "odd"):
            for m in range(2, 13):
                pool = partitions_of_into(m, family)
                if len(pool) >= 2:
                    out.append({"lam": pool[0], "lam2": pool[-1], "family": family})
        return out

    return [
        IdentitySpec(
            "rrxcomb1", "marked RR1, difference statistic", "combinatorial",
            params=("M",), hypothesis="M >= 1 and M = 1 or 4 (mod 5)", valid=_in(5, {1, 4}),
            pair=marked(P.RR1_PARTS, Statistic.RR1_MARK, P.GAP2),
            sweep=_grid(rr1_m), size=36, analytic="rr1x",
        ),
        IdentitySpec(
            "rrx2comb1", "marked RR2, difference statistic", "combinatorial",
            params=("M",), hypothesis="M >= 2 and M = 2 or 3 (mod 5)",
            valid=_in(5, {2, 3}, minimum=2),
            pair=marked(P.RR2_PARTS, Statistic.RR2_MARK, P.GAP2_NO_ONES),
            sweep=_grid(rr2_m), size=36, analytic="rr2x",
        ),
        IdentitySpec(
            "rrxcomb2", "marked RR1, staircase statistic for M or more parts", "combinatorial",
            params=("M",), hypothesis="M >= 1 and M = 1 or 4 (mod 5)", valid=_in(5, {1, 4}),
            pair=marked(P.RR1_PARTS, Statistic.RR1_STAR, P.GAP2),
            sweep=_grid(rr1_m), size=36, analytic="rr1x",
        ),
        IdentitySpec(
            "rrx2comb2", "marked RR2, staircase statistic for M or more parts", "combinatorial",
            params=("M",), hypothesis="M >= 2 and M = 2 or 3 (mod 5)",
            valid=_in(5, {2, 3}, minimum=2),
            pair=marked(P.RR2_PARTS, Statistic.RR2_STAR, P.GAP2_NO_ONES),
            sweep=_grid(rr2_m), size=36, analytic="rr2x",
        ),
        IdentitySpec(
            "combthm2", "marked Euler odd = distinct, difference statistic", "combinatorial",
            params=("M",), hypothesis="M odd and positive", valid=_in(2, {1}),
            pair=marked(P.ODD, Statistic.EULER_MARK, P.DISTINCT),
            sweep=_grid(odd_m), size=36, analytic="euler-marked",
        ),
        IdentitySpec(
            "combthm3", "marked Euler odd = distinct, staircase statistic", "combinatorial",
            params=("M",), hypothesis="M odd and positive", valid=_in(2, {1}),
            pair=marked(P.ODD, Statistic.EULER_ST, P.DISTINCT),
            sweep=_grid(odd_m), size=36, analytic="euler-marked",
        ),
        IdentitySpec(
            "ggcomb", "first Gollnitz-Gordon theorem", "combinatorial",
            pair=CombinatorialPair(_const(P.GG1_PARTS), _everything,
                                   _const(P.GG_GAP), _everything,
                                   "parts 1, 4, 7 (mod 8)", "Gollnitz-Gordon gaps"),
            size=36, analytic="gg1",
        ),
        IdentitySpec(
            "ggcomb2", "second Gollnitz-Gordon theorem", "combinatorial",
            pair=CombinatorialPair(_const(P.GG2_PARTS), _everything,
                                   _const(P.GG_GAP_MIN3), _everything,
                                   "parts 3, 4, 5 (mod 8)", "Gollnitz-Gordon gaps, parts >= 3"),
            size=36, analytic="gg2",
        ),
        IdentitySpec(
            "ggxcomb", "marked first Gollnitz-Gordon theorem", "combinatorial",
            params=("M",), hypothesis="M >= 1 and M = 1, 4 or 7 (mod 8)",
            valid=_in(8, {1, 4, 7}),
            pair=marked(P.GG1_PARTS, Statistic.GG1_MARK, P.GG_GAP),
            sweep=_grid(_in_class(8, {1, 4, 7}, 12)), size=36, analytic="gg1x",
        ),
        IdentitySpec(
            "ggxcombm", "marked second Gollnitz-Gordon theorem", "combinatorial",
            params=("M",), hypothesis="M >= 3 and M = 3, 4 or 5 (mod 8)",
            valid=_in(8, {3, 4, 5}, minimum=3),
            pair=marked(P.GG2_PARTS, Statistic.GG2_MARK, P.GG_GAP_MIN3),
            sweep=_grid(_in_class(8, {3, 4, 5}, 12)), size=36, analytic="gg2x",
        ),
        IdentitySpec(
            "agcombm", "marked Andrews-Gordon theorem via Durfee dissections", "combinatorial",
            params=("k", "a", "M"),
            hypothesis="0 <= a <= k and M not congruent to 0, +-(k+1-a) mod 2k+3",
            valid=_agbig_valid,
            pair=CombinatorialPair(_ag_family, _count_m, _const(P.ALL), _ag_key,
                                   "exactly j parts equal to M", "admissible, statistic j"),
            sweep=ag_sweep, size=24, analytic="agbig", aliases=("ag-comb",),
        ),
        IdentitySpec(
            "shiftcomb", "RR1 with part M shifted to N", "combinatorial",
            params=("M", "N"), hypothesis="M = 1 or 4 (mod 5), N > M, N not 1 or 4 (mod 5)",
            valid=lambda p: p["M"] >= 1 and p["M"] % 5 in (1, 4)
            and p["N"] > p["M"] and p["N"] % 5 not in (1, 4),
            pair=CombinatorialPair(
                lambda p: ConstraintSet.residue_classes(5, {1, 4}, deny={p["M"]}, allow={p["N"]}),
                _everything, _const(P.GAP2), _shift(Statistic.SHIFT_RR),
                "parts 1, 4 (mod 5) except M, or N", "difference in 0..M-1 (mod N)"),
            sweep=lambda: [{"M": m, "N": n} for m in rr1_m for n in range(m + 1, 16)
                           if n % 5 not in (1, 4)],
            size=36, analytic="shift-rr",
        ),
        IdentitySpec(
            "weirdshift", "RR1 with parts 1, 4 shifted to 2, 3", "combinatorial",
            pair=CombinatorialPair(
                _const(ConstraintSet.residue_classes(5, {1, 4}, deny={1, 4}, allow={2, 3})),
                _everything, _const(P.GAP2), _shift(Statistic.SHIFT23),
                "parts in {2, 3, 5k+1, 5k+4 : k >= 1}", "difference not 1 (mod 3)"),
            size=36, analytic="shift23",
        ),
        IdentitySpec(
            "weirdshift2", "Euler odd = distinct with odd part M shifted to even N",
            "combinatorial", params=("M", "N"), hypothesis="M odd, N even, N > M",
            valid=lambda p: p["M"] >= 1 and p["M"] % 2 == 1 and p["N"] % 2 == 0 and p["N"] > p["M"],
            pair=CombinatorialPair(
                lambda p: ConstraintSet.residue_classes(2, {1}, deny={p["M"]}, allow={p["N"]}),
                _everything, _const(P.DISTINCT), _shift(Statistic.SHIFT_EULER),
                "odd parts except M, or N", "difference in 0..M-1 (mod N)"),
            sweep=lambda: [{"M": m, "N": n} for m in odd_m for n in range(m + 1, 15) if n % 2 == 0],
            size=36, analytic="shift-euler",
        ),
        IdentitySpec(
            "extendrrcomb", "marked RR1 for a marked sub-partition lam of M", "combinatorial",
            params=("lam",), hypothesis="lam non-empty with parts = 1 or 4 (mod 5)",
            valid=_over(P.RR1_PARTS, "lam"),
            pair=CombinatorialPair(_const(P.RR1_PARTS), _embed("lam"),
                                   _const(P.GAP2), _weight_stat(Statistic.RR1_MARK, "lam"),
                                   "k copies of lam inside", "rr1-mark with M = |lam|"),
            sweep=extend_sweep("rr1"), size=36,
        ),
        IdentitySpec(
            "extendrr2comb", "marked RR2 for a marked sub-partition lam of M", "combinatorial",
            params=("lam",), hypothesis="lam non-empty with parts = 2 or 3 (mod 5)",
            valid=_over(P.RR2_PARTS, "lam"),
            pair=CombinatorialPair(_const(P.RR2_PARTS), _embed("lam"),
                                   _const(P.GAP2_NO_ONES), _weight_stat(Statistic.RR2_MARK, "lam"),
                                   "k copies of lam inside", "rr2-mark with M = |lam|"),
            sweep=extend_sweep("rr2"), size=36,
        ),
        IdentitySpec(
            "oddcor", "embedding tables agree for two partitions of the same M", "combinatorial",
            params=("lam", "lam2", "family"),
            hypothesis="lam, lam2 non-empty partitions of the same M with parts from the family",
            valid=lambda p: p["family"] in FAMILIES and len(p["lam"]) > 0
            and sum(p["lam"]) == sum(p["lam2"])
            and FAMILIES[p["family"]].admits(p["lam"]) and FAMILIES[p["family"]].admits(p["lam2"]),
            pair=CombinatorialPair(lambda p: FAMILIES[p["family"]], _embed("lam"),
                                   lambda p: FAMILIES[p["family"]], _embed("lam2"),
                                   "copies of lam", "copies of lam2"),
            sweep=oddcor_sweep, size=30,
        ),
    ]


def _special_entries() -> list[IdentitySpec]:
    def weirdprop_sweep():
        return [{"lam": lam} for m in range(1, 13) for lam in partitions_of_into(m, "rr1")][::3]

    def inequality_sweep():
        out = []
        for m in range(3, 13):
            pairs = [(lam, th) for lam in partitions_of_into(m, "rr1")
                     for th in partitions_of_into(m, "rr2")]
            out.extend({"M": m, "lam": lam, "theta": th} for lam, th in pairs[:2])
        return out

    return [
        IdentitySpec(
            "weirdprop", "marking a sub-partition of M in parts 1, 4 (mod 5)", "marked-sum",
            params=("lam",), hypothesis="lam non-empty with parts = 1 or 4 (mod 5)",
            valid=_over(P.RR1_PARTS, "lam"), sweep=weirdprop_sweep, size=40,
        ),
        IdentitySpec(
            "weirdprop2", "marking a sub-partition of M in an arbitrary part set", "marked-sum",
            params=("lam", "family"),
            hypothesis="lam non-empty with parts from the family (rr1, rr2, odd, all)",
            valid=lambda p: p["family"] in FAMILIES and len(p["lam"]) > 0
            and FAMILIES[p["family"]].admits(p["lam"]),
            sweep=lambda: [
                {"lam": Partition((3, 1, 1)), "family": "odd"},
                {"lam": Partition((5, 3, 3)), "family": "odd"},
                {"lam": Partition((3, 2, 2)), "family": "rr2"},
                {"lam": Partition((4, 2, 1)), "family": "all"},
            ],
            size=30,
        ),
        IdentitySpec(
            "inequality", "E_theta^B(n,k) <= E_lam^A(n,k) with its difference series",
            "inequality", params=("M", "lam", "theta"),
            hypothesis="M >= 3, lam |- M in parts 1, 4 (mod 5), theta |- M in parts 2, 3 (mod 5)",
            valid=lambda p: p["M"] >= 3 and sum(p["lam"]) == p["M"] == sum(p["theta"])
            and P.RR1_PARTS.admits(p["lam"]) and P.RR2_PARTS.admits(p["theta"]),
            sweep=inequality_sweep, size=60,
        ),
    ]


@lru_cache(maxsize=None)
def registry() -> tuple[IdentitySpec, ...]:
    return tuple(_series_entries() + _combinatorial_entries() + _special_entries())


def lookup(identity_id: str) -> IdentitySpec:
    key = identity_id.lower()
    for spec in registry():
        if spec.id == key or key in spec.aliases:
            return spec
    known = ", ".join(s.id for s in registry())
    raise KeyError(f"unknown identity {identity_id!r}; known ids: {known}")
