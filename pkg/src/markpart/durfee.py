"""Durfee dissections, (k+1, k+1-a)-admissibility and the Andrews-Gordon marking count.

A dissection cuts the diagram top-down into blocks.  The first ``k - a``
blocks are ``n x n`` Durfee squares; later blocks are ``(n+1) x n`` Durfee
rectangles whose last row is exactly ``n`` long.  Every row of a block is at
least the block width, and a square is maximal: the row right below it is at
most its width.  The blocks must use up every row, and there are at most ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .partitions import Partition
from .qseries import TruncatedSeries, gauss_binom, inverse_pochhammer


@dataclass(frozen=True)
class Dissection:
    square_widths: tuple[int, ...]
    rect_widths: tuple[int, ...]

    @property
    def widths(self) -> tuple[int, ...]:
        return self.square_widths + self.rect_widths

    @property
    def r(self) -> int:
        return len(self.square_widths) + len(self.rect_widths)

    @property
    def rows(self) -> int:
        return sum(self.square_widths) + sum(w + 1 for w in self.rect_widths)

    @property
    def area(self) -> int:
        return sum(w * w for w in self.square_widths) + sum(w * (w + 1) for w in self.rect_widths)

    def __str__(self) -> str:
        tags = [f"{w}s" for w in self.square_widths] + [f"{w}r" for w in self.rect_widths]
        return "[" + ", ".join(tags) + "]"


def _check(k: int, a: int) -> None:
    if k < 1 or not 0 <= a <= k:
        raise ValueError(f"need k >= 1 and 0 <= a <= k, got k={k}, a={a}")


@lru_cache(maxsize=None)
def _dissections(rows: tuple[int, ...], k: int, a: int) -> tuple[Dissection, ...]:
    squares = k - a
    total = len(rows)
    found: list[Dissection] = []
    widths: list[int] = []

    def rec(start: int, prev: int) -> None:
        if start == total:
            s = widths[:squares]
            found.append(Dissection(tuple(s), tuple(widths[squares:])))
            return
        t = len(widths)
        if t == k:
            return
        square = t < squares
        for n in range(1, min(prev, rows[start]) + 1):
            end = start + (n if square else n + 1)
            if end > total:
                break
            if rows[end - 1] < n:
                continue
            if square:
                if end < total and rows[end] > n:
                    continue
            elif rows[end - 1] != n:
                continue
            widths.append(n)
            rec(end, n)
            widths.pop()

    rec(0, rows[0] if rows else 0)
    return tuple(found)


def find_dissections(lam: Iterable[int], k: int, a: int) -> tuple[Dissection, ...]:
    """Every admissible dissection of ``lam`` with at most ``k`` blocks."""
    _check(k, a)
    return _dissections(tuple(lam), k, a)


def is_admissible(lam: Iterable[int], k: int, a: int) -> bool:
    return bool(find_dissections(lam, k, a))


def canonical_dissection(lam: Iterable[int], k: int, a: int) -> tuple[Dissection, bool]:
    """The dissection with the fewest blocks, plus a flag set when the
    dissections of ``lam`` disagree on the number of blocks."""
    found = find_dissections(lam, k, a)
    if not found:
        raise ValueError(f"{tuple(lam)} is not ({k + 1},{k + 1 - a})-admissible")
    best = min(found, key=lambda d: (d.r, d.widths))
    return best, len({d.r for d in found}) > 1


def ag_statistic(lam: Iterable[int], m: int, k: int, a: int) -> int:
    """Marking count ``j`` of an admissible partition."""
    lam = tuple(lam)
    if m < 1:
        raise ValueError("M must be positive")
    d, _ = canonical_dissection(lam, k, a)
    if d.r == 0:
        return 0
    n1 = d.widths[0]
    if n1 == 1 and d.r == 1:
        n = sum(lam)
        if a < k:
            return n // m
        # lam = (lam_1, 1) of size Mj, Mj+2..Mj+M-1 or Mj+M+1
        j, rest = divmod(n, m)
        return j - 1 if rest == 1 else j
    if n1 == 1:
        return (lam[0] - n1) // m
    return (lam[0] - lam[1]) // m


def dissection_generating_function(widths: tuple[int, ...], cutoff: int) -> TruncatedSeries:
    """``1/(q)_{n_1} * prod_j [n_j choose n_{j+1}]_q`` for fixed block widths.

    Counts what sits to the right of the blocks; multiply by ``q^area`` for
    the full weight.
    """
    if not widths:
        return TruncatedSeries.one(cutoff)
    series = inverse_pochhammer(1, 1, widths[0], cutoff)
    for hi, lo in zip(widths, widths[1:]):
        series = series * gauss_binom(hi, lo, cutoff)
    return series


def partitions_with_dissection(
    dissection: Dissection, candidates: Iterable[Partition]
) -> list[Partition]:
    """The candidates whose dissection (with as many blocks as ``dissection``) is exactly it."""
    k = dissection.r
    a = k - len(dissection.square_widths)
    return [
        lam
        for lam in candidates
        if dissection in find_dissections(lam, max(k, 1), a if k else 0)
    ]
