"""Bose-Mesner data of a distance-regular graph.

Everything scalar is a Fraction.  The |X| x |X| matrices A_i and E_i are
only materialized on request, since the eigenmatrices already determine
every scalar the rest of the package needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exactmath import ExactMatrix, integer_roots, qint, tridiagonal_charpoly
from .graphs import DistanceRegularGraph


class NonIntegralSpectrum(ValueError):
    pass


@dataclass(frozen=True)
class QPolyOrdering:
    """A Q-polynomial ordering of the primitive idempotents."""

    perm: tuple[int, ...]
    dual_eigenvalues: tuple[Fraction, ...]
    a_star: tuple[Fraction, ...]
    b_star: tuple[Fraction, ...]  # b*_0 .. b*_d, b*_d = 0
    c_star: tuple[Fraction, ...]  # c*_0 .. c*_d, c*_0 = 0

    @property
    def d(self) -> int:
        return len(self.perm) - 1


@dataclass(frozen=True, eq=False)
class SchemeData:
    G: DistanceRegularGraph
    eigenvalues: tuple[int, ...]  # theta_0 = k > theta_1 > ... > theta_d
    P: tuple[tuple[Fraction, ...], ...]  # P[i][j] = v_j(theta_i)
    Q: tuple[tuple[Fraction, ...], ...]  # Q[j][i] = m_i v_j(theta_i) / k_j
    multiplicities: tuple[int, ...]
    krein: tuple  # krein[k][i][j] = q^k_ij
    qpoly_orderings: tuple[QPolyOrdering, ...] = field(default=())

    @property
    def d(self) -> int:
        return len(self.eigenvalues) - 1

    @property
    def n(self) -> int:
        return self.G.n

    def krein_parameter(self, i: int, j: int, k: int) -> Fraction:
        return self.krein[k][i][j]

    @cached_property
    def A(self) -> tuple[ExactMatrix, ...]:
        """Distance matrices A_0..A_d."""
        dist = self.G.dist
        return tuple(ExactMatrix.from_rows((dist == i).astype(int).tolist()) for i in range(self.d + 1))

    @cached_property
    def E(self) -> tuple[ExactMatrix, ...]:
        """Primitive idempotents in the natural (eigenvalue) order."""
        return tuple(self.idempotent(i) for i in range(self.d + 1))

    def idempotent(self, i: int) -> ExactMatrix:
        """E_i = |X|^{-1} sum_j Q[j][i] A_j, built entrywise from the distance matrix."""
        n = self.n
        values = [self.Q[j][i] / n for j in range(self.d + 1)]
        dist = self.G.dist
        return ExactMatrix(n, n, [values[int(t)] for t in dist.ravel()])

    def dual_entry(self, i: int, j: int) -> Fraction:
        """Common value of E_i on pairs at distance j."""
        return self.Q[j][i] / self.n

    def quadratic_form(self, i: int, pair_counts) -> Fraction:
        """Yhat^T E_i Yhat from n_j = number of ordered pairs of Y at distance j."""
        return sum((self.Q[j][i] * int(c) for j, c in enumerate(pair_counts)), Fraction(0)) / self.n

    def standard_or_first_ordering(self, classical=None) -> QPolyOrdering:
        if not self.qpoly_orderings:
            raise ValueError(f"{self.G.name} is not Q-polynomial")
        if classical is not None:
            try:
                return standard_ordering_for_classical(self, classical)
            except ValueError:
                pass
        return self.qpoly_orderings[0]


def distance_polynomial_values(b, c, x) -> list:
    """v_0(x)..v_d(x) from x v_j = b_{j-1} v_{j-1} + a_j v_j + c_{j+1} v_{j+1}."""
    d = len(b) - 1
    k = b[0]
    a = [k - b[j] - c[j] for j in range(d + 1)]
    v = [Fraction(1), Fraction(x)]
    for j in range(1, d):
        v.append(((x - a[j]) * v[j] - b[j - 1] * v[j - 1]) / c[j + 1])
    return v[: d + 1]


def eigenvalues_of(G: DistanceRegularGraph) -> tuple[int, ...]:
    d = G.d
    a = G.a
    # tridiagonal intersection matrix: diagonal a_i, upper b_i, lower c_{i+1}
    poly = tridiagonal_charpoly(a, G.b[:d], G.c[1:])
    roots = integer_roots(poly)
    if sum(m for _, m in roots) != d + 1 or any(m != 1 for _, m in roots):
        raise NonIntegralSpectrum(f"{G.name}: intersection matrix has non-integral eigenvalues; integer roots {roots}")
    return tuple(r for r, _ in roots)


def build_scheme(G: DistanceRegularGraph, find_orderings: bool = True) -> SchemeData:
    d, n = G.d, G.n
    thetas = eigenvalues_of(G)
    if thetas[0] != G.k:
        raise AssertionError("largest eigenvalue must be the valency")
    ks = G.valencies()
    P = [distance_polynomial_values(G.b, G.c, th) for th in thetas]
    mult = []
    for i in range(d + 1):
        denom = sum(P[i][j] ** 2 / ks[j] for j in range(d + 1))
        m = Fraction(n) / denom
        if m.denominator != 1:
            raise NonIntegralSpectrum(f"{G.name}: multiplicity {m} is not an integer")
        mult.append(int(m))
    Q = [[mult[i] * P[i][j] / ks[j] for i in range(d + 1)] for j in range(d + 1)]
    krein = tuple(
        tuple(
            tuple(sum((Q[l][i] * Q[l][j] * P[k][l] for l in range(d + 1)), Fraction(0)) / n for j in range(d + 1))
            for i in range(d + 1)
        )
        for k in range(d + 1)
    )
    S = SchemeData(
        G,
        thetas,
        tuple(tuple(r) for r in P),
        tuple(tuple(r) for r in Q),
        tuple(mult),
        krein,
    )
    if find_orderings:
        object.__setattr__(S, "qpoly_orderings", tuple(find_qpoly_orderings(S)))
    return S


def _ordering_data(S: SchemeData, perm) -> QPolyOrdering | None:
    d = S.d
    one = perm[1] if d >= 1 else 0
    kr = S.krein
    # up[i], down[i]: coefficients of E_{i+1}, E_{i-1} in |X| E_1 o E_i
    a_s, up, down = [], [], []
    for i in range(d + 1):
        si = perm[i]
        for k in range(d + 1):
            if abs(k - i) > 1 and kr[perm[k]][one][si] != 0:
                return None
        a_s.append(kr[si][one][si])
        up.append(kr[perm[i + 1]][one][si] if i < d else Fraction(0))
        down.append(kr[perm[i - 1]][one][si] if i > 0 else Fraction(0))
    for i in range(1, d + 1):
        if up[i - 1] == 0 or down[i] == 0:
            return None
    # |X| E_1 o E_i = b*_{i-1} E_{i-1} + a*_i E_i + c*_{i+1} E_{i+1}
    b_star = tuple(down[i + 1] if i < d else Fraction(0) for i in range(d + 1))
    c_star = tuple(up[i - 1] if i > 0 else Fraction(0) for i in range(d + 1))
    theta_star = tuple(S.Q[i][one] for i in range(d + 1))
    if len(set(theta_star)) != d + 1:
        return None
    return QPolyOrdering(tuple(perm), theta_star, tuple(a_s), b_star, c_star)


def find_qpoly_orderings(S: SchemeData) -> list[QPolyOrdering]:
    """All orderings with a three-term recurrence for E_1 o E_i, sorted by permutation."""
    d = S.d
    out = []
    for rest in itertools.permutations(range(1, d + 1)):
        od = _ordering_data(S, (0,) + rest)
        if od is not None:
            out.append(od)
    out.sort(key=lambda o: o.perm)
    return out


def fits_standard_shape(theta_star, q) -> bool:
    """theta*_i = xi [d-i]_q + zeta with xi != 0."""
    d = len(theta_star) - 1
    if d == 0:
        return True
    zeta = theta_star[d]
    xi = (theta_star[d - 1] - zeta) / qint(1, q)
    if xi == 0:
        return False
    return all(theta_star[i] == xi * qint(d - i, q) + zeta for i in range(d + 1))


def standard_ordering_for_classical(S: SchemeData, cp) -> QPolyOrdering:
    q = cp.q if hasattr(cp, "q") else cp[1]
    for od in S.qpoly_orderings:
        if fits_standard_shape(od.dual_eigenvalues, q):
            return od
    raise ValueError(f"no Q-polynomial ordering of {S.G.name} has the standard shape for q={q}")


def pair_distance_counts(G: DistanceRegularGraph, Y) -> np.ndarray:
    """n_j = ordered pairs (x, y) in Y x Y at distance j."""
    idx = np.asarray(sorted(Y), dtype=np.intp)
    sub = G.dist[np.ix_(idx, idx)]
    return np.bincount(sub.ravel(), minlength=G.d + 1)


def check_scheme_axioms(S: SchemeData, matrix_level: bool | None = None) -> list[str]:
    """Return a list of violated identities (empty when everything holds).

    Scalar identities are always checked.  The matrix-level identities on
    A_i and E_i are checked when the graph is small enough (or when forced).
    """
    problems = []
    d, n = S.d, S.n
    for i in range(d + 1):
        for j in range(d + 1):
            pq = sum(S.P[i][l] * S.Q[l][j] for l in range(d + 1))
            if pq != (n if i == j else 0):
                problems.append(f"PQ[{i}][{j}] = {pq}")
    if sum(S.multiplicities) != n:
        problems.append("multiplicities do not sum to |X|")
    for k in range(d + 1):
        for i in range(d + 1):
            for j in range(d + 1):
                if S.krein[k][i][j] < 0:
                    problems.append(f"negative Krein parameter q^{k}_{i}{j}")
    if matrix_level is None:
        matrix_level = n <= 64
    if matrix_level:
        problems.extend(_matrix_checks(S))
    return problems


def _matrix_checks(S: SchemeData) -> list[str]:
    from .exactmath import entrywise_product, matmul, trace

    problems = []
    d, n = S.d, S.n
    A, E = S.A, S.E
    if A[0] != ExactMatrix.identity(n):
        problems.append("A_0 != I")
    total = A[0]
    for i in range(1, d + 1):
        total = total + A[i]
    if total != ExactMatrix.ones(n):
        problems.append("sum A_i != J")
    G = S.G
    for i in range(d + 1):
        lhs = matmul(A[1], A[i])
        rhs = A[i].scale(G.a[i])
        if i > 0:
            rhs = rhs + A[i - 1].scale(G.b[i - 1])
        if i < d:
            rhs = rhs + A[i + 1].scale(G.c[i + 1])
        if lhs != rhs:
            problems.append(f"three-term recurrence fails for A_1 A_{i}")
    if E[0] != ExactMatrix.ones(n).scale(Fraction(1, n)):
        problems.append("E_0 != J/|X|")
    esum = E[0]
    for i in range(1, d + 1):
        esum = esum + E[i]
    if esum != ExactMatrix.identity(n):
        problems.append("sum E_i != I")
    for i in range(d + 1):
        if trace(E[i]) != S.multiplicities[i]:
            problems.append(f"trace E_{i} != m_{i}")
        for j in range(i, d + 1):
            prod = matmul(E[i], E[j])
            want = E[i] if i == j else ExactMatrix.zeros(n)
            if prod != want:
                problems.append(f"E_{i} E_{j} wrong")
    for od in S.qpoly_orderings:
        p = od.perm
        for i in range(d + 1):
            lhs = entrywise_product(E[p[1]], E[p[i]]).scale(n)
            rhs = E[p[i]].scale(od.a_star[i])
            if i > 0:
                rhs = rhs + E[p[i - 1]].scale(od.b_star[i - 1])
            if i < d:
                rhs = rhs + E[p[i + 1]].scale(od.c_star[i + 1])
            if lhs != rhs:
                problems.append(f"dual three-term recurrence fails under {p} at i={i}")
    return problems


def scheme_to_json(S: SchemeData) -> dict:
    from .exactmath import format_rational as fr

    d = S.d
    return {
        "eigenvalues": list(S.eigenvalues),
        "multiplicities": list(S.multiplicities),
        "P": [[fr(x) for x in row] for row in S.P],
        "Q": [[fr(x) for x in row] for row in S.Q],
        "krein": [[[fr(S.krein[k][i][j]) for k in range(d + 1)] for j in range(d + 1)] for i in range(d + 1)],
        "qpoly_orderings": [
            {
                "perm": list(o.perm),
                "dual_eigenvalues": [fr(x) for x in o.dual_eigenvalues],
                "a_star": [fr(x) for x in o.a_star],
                "b_star": [fr(x) for x in o.b_star],
                "c_star": [fr(x) for x in o.c_star],
            }
            for o in S.qpoly_orderings
        ],
    }
