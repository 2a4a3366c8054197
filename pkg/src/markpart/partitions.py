"""Partitions, constrained enumeration, and the marking statistics."""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


class Partition(tuple):
    """Weakly decreasing tuple of positive parts; ``()`` is the partition of 0."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {p}")
            if i and p > parts[i - 1]:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _unchecked(cls, parts: Iterable[int]) -> "Partition":
        return tuple.__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"7,7,7,1^10"``; parentheses, spaces and unsorted input are accepted."""
        body = text.strip().strip("()[]").strip()
        if not body:
            return cls()
        parts: list[int] = []
        for token in re.split(r"[,\s]+", body):
            if not token:
                continue
            base, _, exp = token.partition("^")
            try:
                value, count = int(base), int(exp) if exp else 1
            except ValueError:
                raise ValueError(f"bad partition token {token!r}") from None
            if count < 0:
                raise ValueError(f"bad multiplicity in {token!r}")
            parts.extend([value] * count)
        return cls(sorted(parts, reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    def multiplicity(self, part: int) -> int:
        return self.count(part)

    def multiplicities(self) -> dict[int, int]:
        """``{part: count}`` in decreasing part order."""
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def compact(self) -> str:
        """Multiplicity notation, e.g. ``7^3,1^10``."""
        return ",".join(
            str(p) if m == 1 else f"{p}^{m}" for p, m in self.multiplicities().items()
        )

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"


class Gap(enum.Enum):
    NONE = "none"
    DISTINCT = "distinct"
    GAP2 = "gap2"
    GAP2_EVEN3 = "gap2-even3"  # gap >= 2, and >= 3 between consecutive even parts

    def allows(self, larger: int, smaller: int) -> bool:
        d = larger - smaller
        if self is Gap.NONE:
            return d >= 0
        if self is Gap.DISTINCT:
            return d >= 1
        if self is Gap.GAP2:
            return d >= 2
        return d >= 3 if larger % 2 == 0 and smaller % 2 == 0 else d >= 2


@dataclass(frozen=True)
class ConstraintSet:
    """Admissible partition family.

    A part ``p`` is allowed when ``p >= min_part``, ``p`` is not denied, and
    either ``p % modulus`` is in ``residues`` or ``p`` is explicitly allowed.
    """

    modulus: int = 1
    residues: frozenset = frozenset({0})
    allow: frozenset = frozenset()
    deny: frozenset = frozenset()
    min_part: int = 1
    gap: Gap = Gap.NONE
    max_parts: int | None = None

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "residues", frozenset(self.residues))
        object.__setattr__(self, "allow", frozenset(self.allow))
        object.__setattr__(self, "deny", frozenset(self.deny))
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise ValueError(f"residues must lie in [0, {self.modulus})")
        if self.min_part < 0:
            raise ValueError("min_part must be non-negative")

    @classmethod
    def residue_classes(cls, modulus: int, residues: Iterable[int], **kw) -> "ConstraintSet":
        return cls(modulus=modulus, residues=frozenset(r % modulus for r in residues), **kw)

    @classmethod
    def explicit(cls, parts: Iterable[int], **kw) -> "ConstraintSet":
        return cls(modulus=1, residues=frozenset(), allow=frozenset(parts), **kw)

    @property
    def multiplicative(self) -> bool:
        """True when the family is a plain product over allowed parts."""
        return self.gap is Gap.NONE and self.max_parts is None

    def allows(self, part: int) -> bool:
        if part < max(self.min_part, 1) or part in self.deny:
            return False
        return part % self.modulus in self.residues or part in self.allow

    def admits(self, lam: Iterable[int]) -> bool:
        parts = tuple(lam)
        if self.max_parts is not None and len(parts) > self.max_parts:
            return False
        if not all(self.allows(p) for p in parts):
            return False
        return all(self.gap.allows(x, y) for x, y in zip(parts, parts[1:]))


ALL = ConstraintSet()
DISTINCT = ConstraintSet(gap=Gap.DISTINCT)
ODD = ConstraintSet.residue_classes(2, {1})
RR1_PARTS = ConstraintSet.residue_classes(5, {1, 4})
RR2_PARTS = ConstraintSet.residue_classes(5, {2, 3})
GAP2 = ConstraintSet(gap=Gap.GAP2)
GAP2_NO_ONES = ConstraintSet(gap=Gap.GAP2, min_part=2)
GG1_PARTS = ConstraintSet.residue_classes(8, {1, 4, 7})
GG2_PARTS = ConstraintSet.residue_classes(8, {3, 4, 5})
GG_GAP = ConstraintSet(gap=Gap.GAP2_EVEN3)
GG_GAP_MIN3 = ConstraintSet(gap=Gap.GAP2_EVEN3, min_part=3)


@lru_cache(maxsize=None)
def enumerate_partitions(n: int, c: ConstraintSet = ALL) -> tuple[Partition, ...]:
    """All partitions of ``n`` in ``c``, reverse-lexicographic, each once."""
    if n < 0:
        raise ValueError("n must be non-negative")
    allowed = [p for p in range(n, 0, -1) if c.allows(p)]
    gap = c.gap
    step = {Gap.NONE: 0, Gap.DISTINCT: 1, Gap.GAP2: 2, Gap.GAP2_EVEN3: 2}[gap]
    cap = c.max_parts
    out: list[Partition] = []
    parts: list[int] = []

    def rec(remaining: int, bound: int) -> None:
        if remaining == 0:
            out.append(Partition._unchecked(parts))
            return
        if cap is not None and len(parts) >= cap:
            return
        limit = min(remaining, bound)
        prev = parts[-1] if parts else None
        for p in allowed:
            if p > limit:
                continue
            if gap is Gap.GAP2_EVEN3 and prev is not None and not gap.allows(prev, p):
                continue
            parts.append(p)
            rec(remaining - p, p - step)
            parts.pop()

    rec(n, n)
    return tuple(out)


def conjugate(lam: Iterable[int]) -> Partition:
    parts = tuple(lam)
    if not parts:
        return Partition()
    return Partition._unchecked(
        sum(1 for p in parts if p > i) for i in range(parts[0])
    )


class Staircase(enum.Enum):
    STAR = "star"  # (2k-1, 2k-3, ..., 1)
    DOUBLE_STAR = "double-star"  # (2k, 2k-2, ..., 2)
    ST = "st"  # (k, k-1, ..., 1)


def staircase(kind: Staircase, length: int) -> tuple[int, ...]:
    if kind is Staircase.STAR:
        return tuple(2 * (length - i) - 1 for i in range(length))
    if kind is Staircase.DOUBLE_STAR:
        return tuple(2 * (length - i) for i in range(length))
    return tuple(length - i for i in range(length))


def staircase_remove(lam: Iterable[int], kind: Staircase) -> Partition:
    """Subtract the staircase of matching length, then read by columns."""
    parts = tuple(lam)
    diff = [p - s for p, s in zip(parts, staircase(kind, len(parts)))]
    if any(d < 0 for d in diff) or any(x < y for x, y in zip(diff, diff[1:])):
        raise ValueError(f"{parts} does not satisfy the gap rule for {kind.value} removal")
    return conjugate(d for d in diff if d)


def embed_count(lam: Iterable[int], mu: Iterable[int]) -> int:
    """Largest ``j`` such that ``mu`` contains ``j`` disjoint copies of ``lam``."""
    need = Counter(lam)
    if not need:
        raise ValueError("embedding count is undefined for the empty partition")
    have = Counter(mu)
    return min(have[p] // m for p, m in need.items())


def remove_copies(lam: Iterable[int], mu: Iterable[int], copies: int) -> Partition:
    """``mu`` minus ``copies`` copies of ``lam`` as a multiset."""
    left = Counter(mu)
    for p, m in Counter(lam).items():
        left[p] -= copies * m
        if left[p] < 0:
            raise ValueError(f"mu does not contain {copies} copies of lam")
    return Partition(sorted(left.elements(), reverse=True))


class Statistic(enum.Enum):
    RR1_MARK = "rr1-mark"
    RR2_MARK = "rr2-mark"
    RR1_STAR = "rr1-star"
    RR2_STAR = "rr2-star"
    EULER_MARK = "euler-mark"
    EULER_ST = "euler-st"
    GG1_MARK = "gg1-mark"
    GG2_MARK = "gg2-mark"
    SHIFT_RR = "shift-rr"
    SHIFT23 = "shift23"
    SHIFT_EULER = "shift-euler"
    AG_MARK = "ag-mark"
    EMBED = "embed"


STATISTIC_FAMILY = {
    Statistic.RR1_MARK: GAP2,
    Statistic.RR2_MARK: GAP2_NO_ONES,
    Statistic.RR1_STAR: GAP2,
    Statistic.RR2_STAR: GAP2_NO_ONES,
    Statistic.EULER_MARK: DISTINCT,
    Statistic.EULER_ST: DISTINCT,
    Statistic.GG1_MARK: GG_GAP,
    Statistic.GG2_MARK: GG_GAP_MIN3,
    Statistic.SHIFT_RR: GAP2,
    Statistic.SHIFT23: GAP2,
    Statistic.SHIFT_EULER: DISTINCT,
}


def _single_rr2(n: int, m: int) -> int:
    # n = Mk + j with j in {0} u [2, M-1] u {M+1}; only n = 1 (mod M) needs j = M+1
    if m < 2:
        raise ValueError("the RR2 single-part rule needs M >= 2")
    k, j = divmod(n, m)
    if j == 1:
        k -= 1
    if k < 0:
        raise ValueError(f"single part {n} has no representation for M={m}")
    return k


def _single_gg2(n: int, m: int) -> int:
    # n = Mk or Mk + j with 3 <= j <= M+2, j != M; residues 1, 2 need j = M+1, M+2
    if m < 3:
        raise ValueError("the GG2 single-part rule needs M >= 3")
    k, j = divmod(n, m)
    if j in (1, 2):
        k -= 1
    if k < 0:
        raise ValueError(f"single part {n} has no representation for M={m}")
    return k


def _gg_two_part(lam: tuple[int, ...], m: int) -> int:
    offset = 3 if lam[1] % 2 == 0 else 2
    return (lam[0] - lam[1] - offset) // m


def mark_statistic(stat: Statistic, lam: Iterable[int], m: int) -> int:
    """The marking count ``k`` a theorem's case list assigns to ``lam``."""
    lam = tuple(lam)
    if m < 1:
        raise ValueError("M must be positive")
    family = STATISTIC_FAMILY.get(stat)
    if family is None or stat in (Statistic.SHIFT_RR, Statistic.SHIFT23, Statistic.SHIFT_EULER):
        raise ValueError(f"{stat} is not a marking statistic")
    if not family.admits(lam):
        raise ValueError(f"{lam} is outside the family of {stat.value}")
    if not lam:
        return 0
    n = sum(lam)
    parts = len(lam)

    if stat in (Statistic.RR2_MARK, Statistic.RR2_STAR) and parts == 1:
        return _single_rr2(n, m)
    if stat is Statistic.GG2_MARK and parts == 1:
        return _single_gg2(n, m)
    if parts == 1:
        return n // m

    if stat is Statistic.RR1_MARK or stat is Statistic.RR2_MARK:
        return (lam[0] - lam[1] - 2) // m
    if stat is Statistic.EULER_MARK:
        return (lam[0] - lam[1] - 1) // m
    if stat in (Statistic.GG1_MARK, Statistic.GG2_MARK):
        return _gg_two_part(lam, m)

    # two to M-1 parts use the difference rule, M or more parts the staircase rule
    if stat is Statistic.EULER_ST:
        if parts < m:
            return (lam[0] - lam[1] - 1) // m
        return staircase_remove(lam, Staircase.ST).count(m)
    if parts < m:
        return (lam[0] - lam[1] - 2) // m
    kind = Staircase.STAR if stat is Statistic.RR1_STAR else Staircase.DOUBLE_STAR
    return staircase_remove(lam, kind).count(m)


def shift_statistic(
    stat: Statistic, lam: Iterable[int], m: int | None = None, n_shift: int | None = None
) -> bool:
    """Membership in a shifted family.

    ``SHIFT_RR``/``SHIFT_EULER``: the difference (or the single part) lies in
    ``0..M-1`` modulo ``N``.  ``SHIFT23``: it is not ``1`` modulo 3.
    """
    lam = tuple(lam)
    family = STATISTIC_FAMILY.get(stat)
    if stat not in (Statistic.SHIFT_RR, Statistic.SHIFT23, Statistic.SHIFT_EULER):
        raise ValueError(f"{stat} is not a shift statistic")
    if not family.admits(lam):
        raise ValueError(f"{lam} is outside the family of {stat.value}")
    if not lam:
        return True
    if len(lam) == 1:
        value = lam[0]
    else:
        value = lam[0] - lam[1] - (1 if stat is Statistic.SHIFT_EULER else 2)
    if stat is Statistic.SHIFT23:
        return value % 3 != 1
    if m is None or n_shift is None:
        raise ValueError("shift statistics need M and N")
    return value % n_shift < m
