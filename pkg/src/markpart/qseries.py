"""Exact truncated power series in ``q`` whose coefficients are polynomials in a marker ``w``.

Everything is dense: a series is a list of coefficient rows indexed by the
q-exponent, and each row is a tuple of Python integers indexed by the
w-exponent.  Python integers never overflow, so all arithmetic is exact.

Infinite products and sums are truncated by q-order: a factor or summand whose
lowest q-exponent exceeds the cutoff is skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

INFINITE = math.inf


class ParameterError(ValueError):
    """A parameter violates the hypothesis of the identity it is used with."""


def _trim(row: Sequence[int]) -> tuple[int, ...]:
    end = len(row)
    while end and row[end - 1] == 0:
        end -= 1
    return tuple(row[:end])


def _row_add(a: tuple[int, ...], b: tuple[int, ...], sign: int = 1) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, v in enumerate(b):
        out[i] += sign * v
    return _trim(out)


def _row_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


class MarkerPolynomial:
    """Polynomial in ``w`` with exact integer coefficients, lowest degree first.

    Trailing zeros are dropped, so two equal polynomials always have equal
    coefficient tuples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs: tuple[int, ...] = _trim([int(c) for c in coeffs])

    @classmethod
    def monomial(cls, coeff: int, exponent: int = 0) -> "MarkerPolynomial":
        if exponent < 0:
            raise ValueError("negative w-exponent")
        return cls([0] * exponent + [coeff])

    @property
    def degree(self) -> int:
        """Degree in ``w``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MarkerPolynomial([other])
        if not isinstance(other, MarkerPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "MarkerPolynomial | int") -> "MarkerPolynomial":
        other = _as_poly(other)
        return MarkerPolynomial(_row_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other: "MarkerPolynomial | int") -> "MarkerPolynomial":
        other = _as_poly(other)
        return MarkerPolynomial(_row_add(self.coeffs, other.coeffs, -1))

    def __rsub__(self, other: int) -> "MarkerPolynomial":
        return _as_poly(other) - self

    def __neg__(self) -> "MarkerPolynomial":
        return MarkerPolynomial(-c for c in self.coeffs)

    def __mul__(self, other: "MarkerPolynomial | int") -> "MarkerPolynomial":
        other = _as_poly(other)
        return MarkerPolynomial(_row_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __call__(self, w: int) -> int:
        """Evaluate at an integer ``w`` (Horner)."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * w + c
        return total

    def __repr__(self) -> str:
        return f"MarkerPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                mono = "w" if e == 1 else f"w^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x: "MarkerPolynomial | int") -> MarkerPolynomial:
    if isinstance(x, MarkerPolynomial):
        return x
    if isinstance(x, int):
        return MarkerPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as a marker polynomial")


class TruncatedSeries:
    """Power series in ``q`` modulo ``q^(cutoff+1)`` with marker-polynomial coefficients.

    Instances are immutable.  Binary operations require equal cutoffs.
    """

    __slots__ = ("cutoff", "_rows")

    def __init__(self, cutoff: int, rows: Iterable[Iterable[int]] = ()):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        built = [_trim(list(r)) for r in rows]
        if len(built) > cutoff + 1:
            built = built[: cutoff + 1]
        built.extend(() for _ in range(cutoff + 1 - len(built)))
        self.cutoff = cutoff
        self._rows: tuple[tuple[int, ...], ...] = tuple(built)

    @classmethod
    def _raw(cls, cutoff: int, rows: Sequence[tuple[int, ...]]) -> "TruncatedSeries":
        # rows must already be trimmed tuples of length cutoff + 1
        obj = cls.__new__(cls)
        obj.cutoff = cutoff
        obj._rows = tuple(rows)
        return obj

    # constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, cutoff: int) -> "TruncatedSeries":
        return cls(cutoff)

    @classmethod
    def one(cls, cutoff: int) -> "TruncatedSeries":
        return cls.monomial(cutoff, 0)

    @classmethod
    def monomial(cls, cutoff: int, n: int, e: int = 0, coeff: int = 1) -> "TruncatedSeries":
        """``coeff * w^e * q^n`` (zero if ``n`` exceeds the cutoff)."""
        if n < 0 or e < 0:
            raise ValueError("exponents must be non-negative")
        rows: list[tuple[int, ...]] = [()] * (cutoff + 1)
        if n <= cutoff:
            rows[n] = _trim([0] * e + [coeff])
        return cls._raw(cutoff, rows)

    @classmethod
    def from_ints(cls, cutoff: int, coeffs: Iterable[int]) -> "TruncatedSeries":
        """A w-free series from its q-coefficients."""
        return cls(cutoff, ([c] for c in coeffs))

    @classmethod
    def from_coefficients(
        cls, cutoff: int, coeffs: Mapping[tuple[int, int], int]
    ) -> "TruncatedSeries":
        """Build from a ``{(n, e): value}`` map; entries beyond the cutoff are ignored."""
        rows = [[] for _ in range(cutoff + 1)]
        for (n, e), v in coeffs.items():
            if n < 0 or e < 0:
                raise ValueError("exponents must be non-negative")
            if n > cutoff:
                continue
            row = rows[n]
            if len(row) <= e:
                row.extend([0] * (e + 1 - len(row)))
            row[e] += v
        return cls(cutoff, rows)

    @classmethod
    def from_machine(cls, cutoff: int, data: Sequence) -> "TruncatedSeries":
        """Inverse of :meth:`to_machine`."""
        return cls.from_coefficients(
            cutoff, {(int(n), int(e)): int(c) for n, terms in data for e, c in terms}
        )

    # access ----------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[MarkerPolynomial, ...]:
        return tuple(MarkerPolynomial(r) for r in self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Raw coefficient rows ``rows[n][e]``."""
        return self._rows

    def __getitem__(self, n: int) -> MarkerPolynomial:
        if not 0 <= n <= self.cutoff:
            raise IndexError(f"q^{n} is outside the truncation 0..{self.cutoff}")
        return MarkerPolynomial(self._rows[n])

    def coefficient(self, n: int, e: int = 0) -> int:
        row = self._rows[n]
        return row[e] if e < len(row) else 0

    def w_degree(self, n: int) -> int:
        return len(self._rows[n]) - 1

    def is_w_free(self) -> bool:
        return all(len(r) <= 1 for r in self._rows)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for r in self._rows for c in r)

    def q_coefficients(self) -> list[int]:
        """Coefficients of a w-free series as plain integers."""
        if not self.is_w_free():
            raise ValueError("series depends on w")
        return [r[0] if r else 0 for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.cutoff, self._rows))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.cutoff}, {list(map(list, self._rows))})"

    def __str__(self) -> str:
        return self.to_text()

    # ring operations -------------------------------------------------------

    def _coerce(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries.monomial(self.cutoff, 0, 0, other)
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"unsupported operand {type(other).__name__}")
        if other.cutoff != self.cutoff:
            raise ValueError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")
        return other

    def __add__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        other = self._coerce(other)
        return TruncatedSeries._raw(
            self.cutoff, [_row_add(a, b) for a, b in zip(self._rows, other._rows)]
        )

    __radd__ = __add__

    def __sub__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        other = self._coerce(other)
        return TruncatedSeries._raw(
            self.cutoff, [_row_add(a, b, -1) for a, b in zip(self._rows, other._rows)]
        )

    def __rsub__(self, other: int) -> "TruncatedSeries":
        return self._coerce(other) - self

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.cutoff, [tuple(-c for c in r) for r in self._rows])

    def __mul__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            return TruncatedSeries._raw(
                self.cutoff, [_trim([c * other for c in r]) for r in self._rows]
            )
        other = self._coerce(other)
        n_max = self.cutoff
        a, b = self._rows, other._rows
        out: list[list[int]] = [[] for _ in range(n_max + 1)]
        b_support = [j for j, r in enumerate(b) if r]
        for i, ra in enumerate(a):
            if not ra:
                continue
            for j in b_support:
                if i + j > n_max:
                    break
                rb = b[j]
                target = out[i + j]
                need = len(ra) + len(rb) - 1
                if len(target) < need:
                    target.extend([0] * (need - len(target)))
                for s, x in enumerate(ra):
                    if x:
                        for t, y in enumerate(rb):
                            target[s + t] += x * y
        return TruncatedSeries._raw(n_max, [_trim(r) for r in out])

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be exactly ``1``."""
        if self._rows[0] != (1,):
            raise ValueError("reciprocal needs constant term 1 with no w-part")
        n_max = self.cutoff
        a = self._rows
        inv: list[tuple[int, ...]] = [(1,)]
        for n in range(1, n_max + 1):
            acc: tuple[int, ...] = ()
            for i in range(1, n + 1):
                if a[i] and inv[n - i]:
                    acc = _row_add(acc, _row_mul(a[i], inv[n - i]))
            inv.append(tuple(-c for c in acc))
        return TruncatedSeries._raw(n_max, inv)

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.one(self.cutoff)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # structured multiplications -------------------------------------------

    def shift(self, n: int, e: int = 0) -> "TruncatedSeries":
        """Multiply by ``w^e q^n``."""
        if n < 0 or e < 0:
            raise ValueError("exponents must be non-negative")
        pad = (0,) * e
        rows: list[tuple[int, ...]] = [()] * min(n, self.cutoff + 1)
        for r in self._rows[: max(0, self.cutoff + 1 - n)]:
            rows.append(pad + r if r else ())
        return TruncatedSeries._raw(self.cutoff, rows)

    def mul_one_minus(self, m: int, e: int = 0, coeff: int = 1) -> "TruncatedSeries":
        """Multiply by ``1 - coeff * w^e q^m``."""
        if m < 1:
            raise ValueError("factor exponent must be positive")
        pad = (0,) * e
        rows = list(self._rows)
        for n in range(self.cutoff, m - 1, -1):
            src = self._rows[n - m]
            if src:
                rows[n] = _row_add(rows[n], pad + tuple(coeff * c for c in src), -1)
        return TruncatedSeries._raw(self.cutoff, rows)

    def div_one_minus(self, m: int, e: int = 0) -> "TruncatedSeries":
        """Multiply by ``1 / (1 - w^e q^m)``."""
        if m < 1:
            raise ValueError("factor exponent must be positive")
        pad = (0,) * e
        rows = list(self._rows)
        for n in range(m, self.cutoff + 1):
            src = rows[n - m]
            if src:
                rows[n] = _row_add(rows[n], pad + src)
        return TruncatedSeries._raw(self.cutoff, rows)

    # specialisations -------------------------------------------------------

    def subs_w(self, value: int) -> "TruncatedSeries":
        """Set ``w := value``; the result is w-free."""
        return TruncatedSeries._raw(
            self.cutoff, [_trim([MarkerPolynomial(r)(value)]) for r in self._rows]
        )

    def subs_w_qpower(self, s: int) -> "TruncatedSeries":
        """Set ``w := q^s``: the term ``w^e q^n`` moves to ``q^(n + s*e)``."""
        if s < 0:
            raise ValueError("substituted q-power must be non-negative")
        out = [0] * (self.cutoff + 1)
        for n, r in enumerate(self._rows):
            for e, c in enumerate(r):
                target = n + s * e
                if target <= self.cutoff:
                    out[target] += c
        return TruncatedSeries.from_ints(self.cutoff, out)

    def w_slice(self, e: int) -> list[int]:
        """The q-coefficients of ``w^e``."""
        return [r[e] if e < len(r) else 0 for r in self._rows]

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return TruncatedSeries._raw(cutoff, self._rows[: cutoff + 1])

    # rendering -------------------------------------------------------------

    def to_text(self) -> str:
        terms = []
        for n, r in enumerate(self._rows):
            if not r:
                continue
            poly = f"({MarkerPolynomial(r)})"
            if n == 0:
                terms.append(poly)
            elif n == 1:
                terms.append(f"{poly}*q")
            else:
                terms.append(f"{poly}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{self.cutoff + 1})"

    def to_machine(self) -> list:
        """``[[n, [[e, "coeff"], ...]], ...]`` over the non-zero coefficients."""
        return [
            [n, [[e, str(c)] for e, c in enumerate(r) if c]]
            for n, r in enumerate(self._rows)
            if r
        ]


def first_difference(
    a: TruncatedSeries, b: TruncatedSeries
) -> tuple[int, int, int, int] | None:
    """Lowest ``(n, e, a_value, b_value)`` where the two series differ, else ``None``."""
    if a.cutoff != b.cutoff:
        raise ValueError(f"cutoff mismatch: {a.cutoff} vs {b.cutoff}")
    for n, (ra, rb) in enumerate(zip(a.rows, b.rows)):
        if ra != rb:
            for e in range(max(len(ra), len(rb))):
                x = ra[e] if e < len(ra) else 0
                y = rb[e] if e < len(rb) else 0
                if x != y:
                    return n, e, x, y
    return None


# builders ------------------------------------------------------------------


def qint(m: int, cutoff: int, base: int = 1) -> TruncatedSeries:
    """``[m]`` in the variable ``q^base``: ``1 + q^base + ... + q^(base*(m-1))``."""
    if m < 1:
        raise ValueError("q-integer needs m >= 1")
    return _geometric_block(m, cutoff, base)


def _geometric_block(m: int, cutoff: int, base: int = 1) -> TruncatedSeries:
    # like qint but allows m = 0 (the empty sum)
    out = [0] * (cutoff + 1)
    for i in range(max(m, 0)):
        if base * i > cutoff:
            break
        out[base * i] = 1
    return TruncatedSeries.from_ints(cutoff, out)


def pochhammer(
    a: int, d: int, count: float, cutoff: int, *, coeff: int = 1
) -> TruncatedSeries:
    """``prod_{j < count} (1 - coeff * q^(a + j*d))``.

    ``coeff=-1`` gives ``(-q^a; q^d)_count``.  ``count=INFINITE`` keeps every
    factor that is not the identity modulo ``q^(cutoff+1)``.
    """
    if a < 0 or d < 1:
        raise ValueError("need a >= 0 and d >= 1")
    if count < 0:
        raise ValueError("count must be non-negative")
    result = TruncatedSeries.one(cutoff)
    j = 0
    while j < count:
        exponent = a + j * d
        if exponent == 0:
            if coeff == 1:
                return TruncatedSeries.zero(cutoff)
            result = result * (1 - coeff)
        elif exponent > cutoff:
            break
        else:
            result = result.mul_one_minus(exponent, 0, coeff)
        j += 1
    return result


def inverse_pochhammer(a: int, d: int, count: float, cutoff: int) -> TruncatedSeries:
    """``1 / (q^a; q^d)_count`` built by repeated geometric division."""
    if a < 1 or d < 1:
        raise ValueError("need a >= 1 and d >= 1")
    result = TruncatedSeries.one(cutoff)
    j = 0
    while j < count:
        exponent = a + j * d
        if exponent > cutoff:
            break
        result = result.div_one_minus(exponent)
        j += 1
    return result


def gauss_binom(n: int, k: int, cutoff: int) -> TruncatedSeries:
    """Gaussian binomial ``(q)_n / ((q)_k (q)_(n-k))`` via the q-Pascal rule."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        raise ValueError(f"gauss_binom needs k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    # row[j] holds the polynomial for binom(m, j); binom(m,j) = binom(m-1,j-1) + q^j binom(m-1,j)
    row: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        new = [[1]]
        for j in range(1, min(m, k) + 1):
            left = row[j - 1]
            right = row[j] if j < len(row) else []
            poly = [0] * max(len(left), len(right) + j)
            for i, c in enumerate(left):
                poly[i] += c
            for i, c in enumerate(right):
                poly[i + j] += c
            new.append(poly)
        row = new
    return TruncatedSeries.from_ints(cutoff, row[k])


@dataclass(frozen=True)
class ProductSpec:
    """Factors ``1 / (1 - w^e q^m)`` of an infinite product.

    Factors come from an explicit list and/or a part predicate; ``marked`` maps
    a part size to the marker exponent attached to its factor.
    """

    allowed: Callable[[int], bool] | None = None
    factors: tuple[tuple[int, int], ...] = ()
    marked: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        for m, e in self.factors:
            if m < 1 or e < 0:
                raise ValueError(f"invalid factor ({m}, {e})")
        for m, e in self.marked:
            if m < 1 or e < 0:
                raise ValueError(f"invalid marked part ({m}, {e})")

    @classmethod
    def residues(
        cls,
        modulus: int,
        residues: Iterable[int],
        marked: Mapping[int, int] | None = None,
        exclude: Iterable[int] = (),
        extra: Iterable[int] = (),
    ) -> "ProductSpec":
        res = frozenset(r % modulus for r in residues)
        skip = frozenset(exclude)
        return cls(
            allowed=lambda m: m % modulus in res and m not in skip,
            factors=tuple((m, 0) for m in extra),
            marked=tuple(sorted((marked or {}).items())),
        )

    @classmethod
    def from_constraints(
        cls, constraints, marked: Mapping[int, int] | None = None
    ) -> "ProductSpec":
        """Product for a purely multiplicative constraint set (anything with ``allows``)."""
        if not getattr(constraints, "multiplicative", True):
            raise ValueError("only multiplicative constraint sets have a product form")
        return cls(allowed=constraints.allows, marked=tuple(sorted((marked or {}).items())))

    def iter_factors(self, cutoff: int) -> Iterator[tuple[int, int]]:
        marks = dict(self.marked)
        for m, e in self.factors:
            if m <= cutoff:
                yield m, e
        if self.allowed is not None:
            for m in range(1, cutoff + 1):
                if self.allowed(m):
                    yield m, marks.get(m, 0)


def marked_product(spec: ProductSpec, cutoff: int) -> TruncatedSeries:
    """``prod 1/(1 - w^e q^m)`` over the factors of ``spec``."""
    result = TruncatedSeries.one(cutoff)
    for m, e in spec.iter_factors(cutoff):
        result = result.div_one_minus(m, e)
    return result


def marker_factor(series: TruncatedSeries, m: int, base: int = 1) -> TruncatedSeries:
    """Multiply by ``[m]_Q / (1 - w Q^m)`` with ``Q = q^base``."""
    return (series * qint(m, series.cutoff, base)).div_one_minus(base * m, 1)


def marked_expansion(
    alpha: Sequence[TruncatedSeries], m: int, cutoff: int, base: int = 1
) -> TruncatedSeries:
    """Expansion of ``(1-Q^m)/(1-wQ^m) * sum_j alpha_j/(Q;Q)_j`` with ``Q = q^base``.

    Returns ``1 + (alpha_1 [m] - Q^m + w Q^m)/(1 - w Q^m)
    + sum_{j>=2} [m]/(1 - w Q^m) * alpha_j / (Q^2; Q)_{j-1}``.
    ``alpha`` must start with the constant series 1; omitted terms are zero.
    """
    if m < 1:
        raise ValueError("marked part must be positive")
    if not alpha or alpha[0] != TruncatedSeries.one(alpha[0].cutoff):
        raise ValueError("alpha[0] must be the constant series 1")
    qm = base * m
    bracket = qint(m, cutoff, base)
    alpha1 = alpha[1] if len(alpha) > 1 else TruncatedSeries.zero(cutoff)
    numerator = (
        alpha1 * bracket
        - TruncatedSeries.monomial(cutoff, qm)
        + TruncatedSeries.monomial(cutoff, qm, 1)
    )
    tail = TruncatedSeries.zero(cutoff)
    for j in range(2, len(alpha)):
        tail = tail + alpha[j] * inverse_pochhammer(2 * base, base, j - 1, cutoff)
    return (
        TruncatedSeries.one(cutoff)
        + numerator.div_one_minus(qm, 1)
        + marker_factor(tail, m, base)
    )


def _ag_sequences(r: int, k: int, a: int, cutoff: int, low: int) -> Iterator[tuple[tuple[int, ...], int]]:
    # n_1 >= ... >= n_r >= low with exponent sum n_i^2 + sum_{i >= k+1-a} n_i <= cutoff;
    # the exponent is at least n_1^2, which bounds the search.
    linear_from = k + 1 - a  # 1-based index of the first linearly weighted n_i

    def rec(prefix: list[int], weight: int, hi: int) -> Iterator[tuple[tuple[int, ...], int]]:
        i = len(prefix) + 1
        if i > r:
            yield tuple(prefix), weight
            return
        for n in range(low, hi + 1):
            w = weight + n * n + (n if i >= linear_from else 0)
            if w > cutoff:
                break
            prefix.append(n)
            yield from rec(prefix, w, n)
            prefix.pop()

    top = math.isqrt(cutoff)
    yield from rec([], 0, top)


def _check_ag(k: int, a: int) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    if not 0 <= a <= k:
        raise ValueError(f"need 0 <= a <= k, got a={a}, k={k}")


def multisum_F(k: int, a: int, cutoff: int) -> TruncatedSeries:
    """The Andrews-Gordon multisum over ``n_1 >= ... >= n_k >= 0``."""
    _check_ag(k, a)
    inv = [inverse_pochhammer(1, 1, m, cutoff) for m in range(cutoff + 1)]
    total = TruncatedSeries.zero(cutoff)
    for ns, weight in _ag_sequences(k, k, a, cutoff, 0):
        term = inv[min(ns[-1], cutoff)]
        for i in range(k - 1):
            term = term * inv[min(ns[i] - ns[i + 1], cutoff)]
        total = total + term.shift(weight)
    return total


def ag_residue_ok(k: int, a: int, m: int) -> bool:
    modulus = 2 * k + 3
    return m % modulus not in {0, (k + 1 - a) % modulus, (-(k + 1 - a)) % modulus}


def ag_product(k: int, a: int, cutoff: int, marked: int | None = None) -> TruncatedSeries:
    """Product side: parts not congruent to 0, +-(k+1-a) mod 2k+3, optionally one marked part."""
    _check_ag(k, a)
    spec = ProductSpec(
        allowed=lambda m: ag_residue_ok(k, a, m),
        marked=((marked, 1),) if marked is not None else (),
    )
    return marked_product(spec, cutoff)


def marked_AG(k: int, a: int, m: int, cutoff: int) -> TruncatedSeries:
    """Sum side of the marked Andrews-Gordon identity (marker on parts of size ``m``)."""
    _check_ag(k, a)
    if m < 1:
        raise ParameterError("M must be a positive integer")
    if not ag_residue_ok(k, a, m):
        raise ParameterError(
            f"M must not be congruent to 0, +-{k + 1 - a} modulo {2 * k + 3}"
        )
    one = TruncatedSeries.one(cutoff)
    mono = lambda n, e=0: TruncatedSeries.monomial(cutoff, n, e)  # noqa: E731
    if a < k:
        # A = q([M-1] + x q^(M-1)) / (1 - x q^M)
        head = (_geometric_block(m - 1, cutoff) + mono(m - 1, 1)).shift(1)
    else:
        # A = q^2([M-2] + x q^(M-2) + q^(M-1)) / (1 - x q^M)
        head = (_geometric_block(m - 2, cutoff) + mono(m - 2, 1) + mono(m - 1)).shift(2)
    inner = TruncatedSeries.zero(cutoff)
    inv = [inverse_pochhammer(1, 1, d, cutoff) for d in range(cutoff + 1)]
    for r in range(1, k + 1):
        for ns, weight in _ag_sequences(r, k, a, cutoff, 1):
            if r == 1 and ns[0] == 1:
                continue  # absorbed into A
            term = inverse_pochhammer(2, 1, ns[-1] - 1, cutoff)
            for i in range(r - 1):
                term = term * inv[min(ns[i] - ns[i + 1], cutoff)]
            inner = inner + term.shift(weight)
    return one + head.div_one_minus(m, 1) + marker_factor(inner, m)
