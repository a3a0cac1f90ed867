"""Linear algebra over the prime fields F_2 and F_3.

Only what the subspace-based graph families need: row reduction, rank,
enumeration of subspaces in reduced row echelon form, and spans.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

SUPPORTED = (2, 3)

# multiplicative inverses, index = element
_INV = {2: (None, 1), 3: (None, 1, 2)}

Vector = tuple[int, ...]


def check_field(q: int) -> None:
    if q not in SUPPORTED:
        raise ValueError(f"only F_2 and F_3 are supported, got q={q}")


def rref(rows: Sequence[Sequence[int]], q: int) -> tuple[Vector, ...]:
    """Reduced row echelon form with zero rows dropped."""
    check_field(q)
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    inv = _INV[q]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        f = inv[m[r][c] % q]
        m[r] = [(x * f) % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % q:
                g = m[i][c]
                m[i] = [(x - g * y) % q for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def rank(rows: Sequence[Sequence[int]], q: int) -> int:
    return len(rref(rows, q))


def subspaces(q: int, n: int, k: int) -> Iterator[tuple[Vector, ...]]:
    """Every k-dimensional subspace of F_q^n, as its RREF basis.

    The order is deterministic: by pivot columns, then by free entries.
    """
    check_field(q)
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        # free positions: row i, column c > pivots[i], c not a pivot
        free = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def span(rows: Sequence[Sequence[int]], q: int, n: int | None = None) -> frozenset[Vector]:
    """All vectors of the row space (including zero).

    With no rows the length n must be given to produce the zero vector.
    """
    if not rows:
        return frozenset() if n is None else frozenset({(0,) * n})
    n = len(rows[0])
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * n
        for a, row in zip(coeffs, rows):
            if a:
                for j, x in enumerate(row):
                    v[j] = (v[j] + a * x) % q
        out.add(tuple(v))
    return frozenset(out)


def encode(v: Sequence[int], q: int) -> int:
    """Integer code of a vector, first coordinate most significant."""
    code = 0
    for x in v:
        code = code * q + x
    return code


def vector_label(v: Sequence[int]) -> str:
    return "".join(str(x) for x in v)


def matrix_label(rows: Sequence[Sequence[int]]) -> str:
    return "/".join(vector_label(r) for r in rows) if rows else "0"
