"""Exact rational scalars, dense rational matrices and small integer polynomials.

Everything here is exact: ``Rational`` is :class:`fractions.Fraction`, which is
always stored reduced with a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class DimensionError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def qint(n: int, q) -> Fraction:
    """The q-integer [n]_q = 1 + q + ... + q^(n-1); negative n allowed."""
    q = as_rational(q)
    if q == 1:
        return Fraction(n)
    return (q ** n - 1) / (q - 1)


def qbinomial(i: int, j: int, q) -> Fraction:
    if i < 0 or j < 0:
        raise ValueError("qbinomial needs nonnegative arguments")
    q = as_rational(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    if j > i:
        return Fraction(0)
    if q == 1:
        return Fraction(math.comb(i, j))
    out = Fraction(1)
    for l in range(1, j + 1):
        out *= (q ** (i - l + 1) - 1) / (q ** l - 1)
    return out


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = as_rational(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) or (0,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return IntPolynomial(tuple(x - y for x, y in zip(a, b)))

    def scale(self, c: int) -> IntPolynomial:
        return IntPolynomial(tuple(c * a for a in self.coefficients))

    def deflate(self, root: int) -> tuple[IntPolynomial, int]:
        """Synthetic division by (x - root); returns (quotient, remainder)."""
        coeffs = self.coefficients
        n = len(coeffs) - 1
        quotient = [0] * n
        acc = 0
        for k in range(n, 0, -1):
            acc = acc * root + coeffs[k]
            quotient[k - 1] = acc
        remainder = acc * root + coeffs[0]
        return IntPolynomial(tuple(quotient) or (0,)), remainder


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def integer_roots(p: IntPolynomial) -> list[tuple[int, int]]:
    """All integer roots of a monic polynomial with their multiplicities.

    Roots come back in decreasing order.  If the multiplicities sum to less
    than the degree, the remaining roots are not integers.
    """
    if p.degree < 1:
        return []
    if p.coefficients[-1] != 1:
        raise ValueError("integer_roots expects a monic polynomial")
    roots: dict[int, int] = {}
    while p.degree >= 1 and p.coefficients[0] == 0:
        p, _ = p.deflate(0)
        roots[0] = roots.get(0, 0) + 1
    if p.degree >= 1:
        for cand in _divisors(p.coefficients[0]):
            for r in (cand, -cand):
                while p.degree >= 1:
                    quotient, rem = p.deflate(r)
                    if rem != 0:
                        break
                    roots[r] = roots.get(r, 0) + 1
                    p = quotient
    return sorted(roots.items(), key=lambda t: -t[0])


def tridiagonal_charpoly(diag: Sequence[int], upper: Sequence[int], lower: Sequence[int]) -> IntPolynomial:
    """det(xI - T) for the tridiagonal integer matrix T.

    ``upper[i]`` is T[i][i+1] and ``lower[i]`` is T[i+1][i].
    """
    n = len(diag)
    prev = IntPolynomial((1,))
    cur = IntPolynomial((-diag[0], 1))
    for i in range(1, n):
        nxt = cur * IntPolynomial((-diag[i], 1)) - prev.scale(upper[i - 1] * lower[i - 1])
        prev, cur = cur, nxt
    return cur


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


class ExactMatrix:
    """Immutable dense matrix with Fraction entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> ExactMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, [1] * (rows * cols))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> ExactMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def __add__(self, other):
        return matadd(self, other)

    def __sub__(self, other):
        return matadd(self, other.scale(-1))

    def __matmul__(self, other):
        return matmul(self, other)

    def scale(self, c) -> ExactMatrix:
        c = as_rational(c)
        return ExactMatrix(self.rows, self.cols, (c * e for e in self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


def _check_same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def matadd(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_same_shape(a, b)
    return ExactMatrix(a.rows, a.cols, (x + y for x, y in zip(a.entries, b.entries)))


def entrywise_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_same_shape(a, b)
    return ExactMatrix(a.rows, a.cols, (x * y for x, y in zip(a.entries, b.entries)))


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bcols = [b.entries[j::b.cols] for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        row = a.row(i)
        # skip zero entries; 0/1 distance matrices are sparse-ish
        nz = [(k, x) for k, x in enumerate(row) if x]
        for col in bcols:
            out.append(sum((x * col[k] for k, x in nz), Fraction(0)))
    return ExactMatrix(a.rows, b.cols, out)


def transpose(a: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(a.cols, a.rows, (a[i, j] for j in range(a.cols) for i in range(a.rows)))


def trace(a: ExactMatrix) -> Fraction:
    if a.rows != a.cols:
        raise DimensionError("trace of a non-square matrix")
    return sum((a[i, i] for i in range(a.rows)), Fraction(0))


def solve_linear(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """One exact solution X of A X = B, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    if a.rows != b.rows:
        raise DimensionError("row count mismatch")
    m, n, k = a.rows, a.cols, b.cols
    aug = [list(a.row(i)) + list(b.row(i)) for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(x != 0 for x in aug[i][n:]):
            return None
    sol = [[Fraction(0)] * k for _ in range(n)]
    for i, c in enumerate(pivots):
        sol[c] = aug[i][n:]
    return ExactMatrix(n, k, (x for row in sol for x in row))


def rank(a: ExactMatrix) -> int:
    rows = a.to_rows()
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, a.rows):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
