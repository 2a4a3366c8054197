"""Sylvester's fishhook bijection between distinct-part and odd-part partitions,
and its M-version that tracks parts of size M.

Fishhook reading, odd to distinct: draw each odd part ``2h+1`` as a centred row
(``h`` cells left of a centre column, ``h`` right).  Peel hooks alternately
from the right half (centre column included) and the left half.  The right
half is ``L + 1`` row-wise, where ``L = (h_1, h_2, ...)``, so both halves are
described by the Frobenius coordinates ``(a_i | b_i)`` of ``L`` together with
the number of rows ``l``.  The hook lengths come out as sums of neighbours in
the zigzag chain

    l, a_1 + 1, b_1, a_2 + 1, b_2, ..., a_d + 1, b_d, 0

which is strictly decreasing along both interleaved subsequences, so the hook
lengths are distinct.  Conversely a distinct partition fixes the chain by back
substitution from the trailing 0.  With this reading the image of ``(n)`` is
``1^n`` and otherwise the number of 1's is ``lam_1 - lam_2 - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .partitions import Partition, conjugate


@dataclass(frozen=True)
class BijectionTrace:
    input: Partition
    output: Partition
    steps: tuple[tuple[str, Any], ...] = field(default=())

    def as_json(self) -> dict:
        return {
            "input": list(self.input),
            "output": list(self.output),
            "steps": [{"step": name, "value": _jsonable(v)} for name, v in self.steps],
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _check_distinct(lam: tuple[int, ...]) -> None:
    if any(x <= y for x, y in zip(lam, lam[1:])) or any(p < 1 for p in lam):
        raise ValueError(f"{lam} does not have distinct positive decreasing parts")


def _check_odd(mu: tuple[int, ...]) -> None:
    if any(p % 2 == 0 or p < 1 for p in mu) or any(x < y for x, y in zip(mu, mu[1:])):
        raise ValueError(f"{mu} is not a partition into odd parts")


def _frobenius(lam: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    conj = conjugate(lam)
    d = sum(1 for i, p in enumerate(lam) if p > i)
    return (
        tuple(lam[i] - i - 1 for i in range(d)),
        tuple(conj[i] - i - 1 for i in range(d)),
    )


def _from_frobenius(arms: tuple[int, ...], legs: tuple[int, ...]) -> Partition:
    d = len(arms)
    if d == 0:
        return Partition()
    rows = [arms[i] + i + 1 for i in range(d)]
    depth = legs[0] + 1
    # below the Durfee square, row r is the number of columns i with leg reaching it
    for r in range(d + 1, depth + 1):
        rows.append(sum(1 for i in range(d) if legs[i] + i + 1 >= r))
    return Partition(rows)


def _chain_from_odd(mu: tuple[int, ...]) -> list[int]:
    half = tuple((p - 1) // 2 for p in mu if p > 1)
    arms, legs = _frobenius(half)
    chain = [len(mu)]
    for a, b in zip(arms, legs):
        chain.extend((a + 1, b))
    chain.append(0)
    return chain


def fishhook_inverse(mu: Iterable[int]) -> Partition:
    """Odd-part partition to distinct-part partition (hook lengths)."""
    mu = tuple(mu)
    _check_odd(mu)
    chain = _chain_from_odd(mu)
    return Partition(s for s in (x + y for x, y in zip(chain, chain[1:])) if s > 0)


def fishhook_trace(lam: Iterable[int]) -> BijectionTrace:
    lam = tuple(lam)
    _check_distinct(lam)
    chain = [0] * (len(lam) + 1)
    for j in range(len(lam), 0, -1):
        chain[j - 1] = lam[j - 1] - chain[j]
    rows = chain[0]
    # odd positions carry a_i + 1, even positions b_i; an odd-length chain ends
    # with a lone right hook whose entry is the terminal 0
    legs = tuple(chain[2::2])
    arms = tuple(x - 1 for x in chain[1::2])[: len(legs)]
    half = _from_frobenius(arms, legs)
    if len(half) > rows:
        raise AssertionError("fishhook chain produced too many rows")
    mu = Partition([2 * h + 1 for h in half] + [1] * (rows - len(half)))
    steps = (("chain", tuple(chain)), ("half-rows", tuple(half)), ("rows", rows))
    return BijectionTrace(Partition(lam), mu, steps)


def fishhook(lam: Iterable[int]) -> Partition:
    """Distinct-part partition to odd-part partition of the same weight."""
    return fishhook_trace(lam).output


def fishhook_m_trace(lam: Iterable[int], m: int) -> BijectionTrace:
    lam = tuple(lam)
    _check_distinct(lam)
    if m < 1 or m % 2 == 0:
        raise ValueError("M must be an odd positive integer")
    if not lam:
        return BijectionTrace(Partition(), Partition())
    if len(lam) == 1:
        k, ones = divmod(lam[0], m)
        out = Partition([m] * k + [1] * ones)
        return BijectionTrace(Partition(lam), out, (("k", k), ("single-part", True)))

    k = (lam[0] - lam[1] - 1) // m
    theta = (lam[0] - k * m,) + lam[1:]
    assert theta[0] > theta[1], "reduced first part must stay above the second"
    gamma = fishhook(theta)
    r = gamma.count(m) if m > 1 else 0
    if r == 0:
        body = list(gamma)
        assert gamma.count(1) <= m - 1
    else:
        body = [p for p in gamma if p != m] + [1] * (r * m)
    out = Partition(sorted(body + [m] * k, reverse=True))
    if r:
        assert out.count(1) >= m
    steps = (
        ("k", k),
        ("theta", Partition(theta)),
        ("gamma", gamma),
        ("r", r),
        ("gamma-prime", Partition(sorted(body, reverse=True))),
    )
    return BijectionTrace(Partition(lam), out, steps)


def fishhook_m(lam: Iterable[int], m: int) -> Partition:
    """M-version: the image has exactly ``floor((lam_1 - lam_2 - 1)/M)`` parts equal to M
    (``floor(n/M)`` for a single part)."""
    return fishhook_m_trace(lam, m).output


def fishhook_m_inverse(mu: Iterable[int], m: int) -> Partition:
    mu = tuple(mu)
    _check_odd(mu)
    if m < 1 or m % 2 == 0:
        raise ValueError("M must be an odd positive integer")
    if not mu:
        return Partition()
    k = mu.count(m)
    rest = [p for p in mu if p != m]
    if m == 1:
        ones, others = 0, rest
    else:
        ones = rest.count(1)
        others = [p for p in rest if p != 1]
    if not others:
        # only M's and fewer than M ones (or only ones when M = 1): a single part
        if m > 1 and ones >= m:
            r, ones_left = divmod(ones, m)
            return _lift(Partition([m] * r + [1] * ones_left), k, m)
        return Partition([k * m + ones])
    if ones <= m - 1:
        gamma = Partition(others + [1] * ones)
    else:
        r, ones_left = divmod(ones, m)
        gamma = Partition(sorted(others + [m] * r, reverse=True) + [1] * ones_left)
    return _lift(gamma, k, m)


def _lift(gamma: Partition, k: int, m: int) -> Partition:
    theta = fishhook_inverse(gamma)
    if len(theta) < 2:
        raise ValueError(f"{gamma} is not in the image of the M-fishhook map")
    return Partition((theta[0] + k * m,) + tuple(theta[1:]))
