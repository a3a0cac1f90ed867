"""Descendent families as posets under reverse inclusion.

Members are stored as Python integer bitsets so that inclusion tests are
single bit operations.  ``a <= b`` in the poset means ``set(b) ⊆ set(a)``;
the whole vertex set is the bottom and singletons sit at the top.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exactmath import qbinomial


class DuplicateElement(ValueError):
    pass


def _bits(Y) -> int:
    out = 0
    for v in Y:
        out |= 1 << int(v)
    return out


@dataclass(eq=False)
class DescendentPoset:
    elements: list  # vertex sets (sorted tuples)
    rank: list  # dual width of each element
    bits: list = field(repr=False)
    le: np.ndarray = field(repr=False)  # le[a, b]: element a <= element b
    covers: list = field(repr=False)  # covers[a] = elements covering a

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def height(self) -> int:
        return max(self.rank)

    def bottoms(self) -> list[int]:
        return [a for a in range(self.size) if self.le[a].all()]

    def lower_covers(self, b: int) -> list[int]:
        return [a for a in range(self.size) if b in self.covers[a]]

    def meet(self, a: int, b: int) -> int | None:
        """Greatest lower bound, or None."""
        lows = np.flatnonzero(self.le[:, a] & self.le[:, b])
        return _greatest(self.le, lows)

    def join(self, a: int, b: int, within: np.ndarray | None = None) -> int | None:
        """Least upper bound (optionally inside a down-set), or None."""
        ups = self.le[a] & self.le[b]
        if within is not None:
            ups = ups & within
        return _least(self.le, np.flatnonzero(ups))


def _greatest(le: np.ndarray, idx: np.ndarray) -> int | None:
    for c in idx:
        if le[idx, c].all():
            return int(c)
    return None


def _least(le: np.ndarray, idx: np.ndarray) -> int | None:
    for c in idx:
        if le[c, idx].all():
            return int(c)
    return None


def build_poset(records_or_sets: Sequence, ranks: Sequence[int] | None = None) -> DescendentPoset:
    """Poset of descendents ordered by reverse inclusion, ranked by dual width."""
    if ranks is None:
        sets = [tuple(r.Y) for r in records_or_sets]
        ranks = [r.w_star for r in records_or_sets]
    else:
        sets = [tuple(sorted(Y)) for Y in records_or_sets]
    if len(set(sets)) != len(sets):
        raise DuplicateElement("descendent family contains duplicates")
    if not sets:
        raise ValueError("empty family")
    bits = [_bits(Y) for Y in sets]
    n = len(sets)
    le = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            le[a, b] = bits[b] & ~bits[a] == 0
    lt = le & ~np.eye(n, dtype=bool)
    covers = []
    for a in range(n):
        above = np.flatnonzero(lt[a])
        covers.append([int(b) for b in above if not (lt[a][above] & lt[above, b]).any()])
    return DescendentPoset(list(sets), list(ranks), bits, le, covers)


@dataclass
class QuantumMatroidReport:
    qm1: bool
    qm2: bool
    qm3: bool
    qm4: bool
    line_regular_q: int | None
    dual_line_regular_beta: int | None
    zigzag_regular_alpha: int | None
    ud_property: list = field(default_factory=list)
    intersection_closed: bool | None = None
    pair_counts_ok: bool | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def axioms_hold(self) -> bool:
        return self.qm1 and self.qm2 and self.qm3 and self.qm4

    def parameters(self, d: int):
        """(d, q, alpha, beta) when all three regularities hold."""
        if None in (self.line_regular_q, self.dual_line_regular_beta, self.zigzag_regular_alpha):
            return None
        return (d, self.line_regular_q, self.zigzag_regular_alpha, self.dual_line_regular_beta)


def _check_qm1(P: DescendentPoset, wit: dict) -> bool:
    bottoms = P.bottoms()
    if len(bottoms) != 1 or P.rank[bottoms[0]] != 0:
        wit["qm1"] = "no unique bottom of rank 0"
        return False
    for a in range(P.size):
        for b in P.covers[a]:
            if P.rank[b] != P.rank[a] + 1:
                wit["qm1"] = (P.elements[a], P.elements[b])
                return False
    return True


def _check_qm2(P: DescendentPoset, wit: dict) -> bool:
    for a in range(P.size):
        for b in range(a + 1, P.size):
            if P.meet(a, b) is None:
                wit["qm2"] = (P.elements[a], P.elements[b])
                return False
    return True


def _check_qm3(P: DescendentPoset, wit: dict) -> bool:
    for x in range(P.size):
        down = P.le[:, x].copy()
        idx = np.flatnonzero(down)
        bottom = _greatest(P.le.T, idx)  # least element of the interval
        if bottom is None:
            wit["qm3"] = ("interval has no least element", P.elements[x])
            return False
        atoms = [a for a in idx if a in P.covers[bottom]]
        for i, u in enumerate(idx):
            for v in idx[i:]:
                m = _greatest(P.le, idx[P.le[idx, u] & P.le[idx, v]])
                j = P.join(int(u), int(v), within=down)
                if m is None or j is None:
                    wit["qm3"] = ("interval is not a lattice", P.elements[x], P.elements[u], P.elements[v])
                    return False
                if P.rank[u] + P.rank[v] != P.rank[m] + P.rank[j]:
                    wit["qm3"] = ("modularity fails", P.elements[x], P.elements[u], P.elements[v])
                    return False
        for y in idx:
            below = [a for a in atoms if P.le[a, y]]
            acc = int(bottom)
            for a in below:
                acc = P.join(acc, a, within=down)
                if acc is None:
                    break
            if acc != y:
                wit["qm3"] = ("not atomic", P.elements[x], P.elements[y])
                return False
    return True


def _check_qm4(P: DescendentPoset, wit: dict) -> bool:
    bottom = P.bottoms()[0] if P.bottoms() else None
    if bottom is None:
        wit["qm4"] = "no bottom"
        return False
    atoms = P.covers[bottom]
    for x in range(P.size):
        for y in range(P.size):
            if P.rank[x] >= P.rank[y]:
                continue
            ok = any(P.le[a, y] and not P.le[a, x] and P.join(x, a) is not None for a in atoms)
            if not ok:
                wit["qm4"] = (P.elements[x], P.elements[y])
                return False
    return True


def _constant(values):
    values = set(values)
    return values.pop() if len(values) == 1 else None


def check_axioms(P: DescendentPoset) -> QuantumMatroidReport:
    wit: dict = {}
    qm1 = _check_qm1(P, wit)
    qm2 = _check_qm2(P, wit)
    qm3 = _check_qm3(P, wit)
    qm4 = _check_qm4(P, wit)
    d = P.height
    rank2 = [b for b in range(P.size) if P.rank[b] == 2]
    q_line = _constant(len(P.lower_covers(b)) - 1 for b in rank2)
    dual = [a for a in range(P.size) if P.rank[a] == d - 1]
    beta = _constant(len(P.covers[a]) - 1 for a in dual)
    zig = []
    tops = [b for b in range(P.size) if P.rank[b] == d]
    for x in dual:
        for y in tops:
            m = P.meet(x, y)
            if m is None or x not in P.covers[m]:
                continue
            count = 0
            for y1 in P.covers[x]:
                for x1 in P.lower_covers(y1):
                    if x1 != x and y in P.covers[x1]:
                        count += 1
            zig.append(count)
    alpha = _constant(zig)
    return QuantumMatroidReport(
        qm1, qm2, qm3, qm4,
        None if q_line is None else q_line,
        None if beta is None else beta,
        None if alpha is None else alpha - 1,
        witnesses=wit,
    )


def check_ud_and_counts(G, P: DescendentPoset, widths: Sequence[int], q=None):
    """(UD)_i for each distance i, and the [d-i choose j-i]_q pair counts.

    Returns (ud_vector, pair_counts_ok, witnesses).
    """
    d, n = G.d, G.n
    member = np.zeros((P.size, n), dtype=np.int64)
    for a, Y in enumerate(P.elements):
        member[a, list(Y)] = 1
    widths = np.asarray(widths)
    dist = G.dist
    ud, ok, wit = [], True, {}
    per_width = {}
    for j in range(d + 1):
        rows = member[widths == j]
        per_width[j] = rows.T @ rows  # pairs -> number of width-j members containing both
    for i in range(d + 1):
        cnt = per_width[i][dist == i]
        good = bool((cnt == 1).all())
        ud.append(good)
        if not good:
            x, y = map(int, np.argwhere((dist == i) & (per_width[i] != 1))[0])
            wit[f"ud_{i}"] = (G.labels[x], G.labels[y], int(per_width[i][x, y]))
    if q is None:
        ok = None
    else:
        for i in range(d + 1):
            for j in range(i, d + 1):
                want = qbinomial(d - i, j - i, q)
                cnt = per_width[j][dist == i]
                if not (cnt == want).all():
                    ok = False
                    x, y = map(int, np.argwhere((dist == i) & (per_width[j] != want))[0])
                    wit.setdefault("pair_counts", (i, j, G.labels[x], G.labels[y], int(per_width[j][x, y]), int(want)))
    return ud, ok, wit


def check_intersection_closure(P: DescendentPoset):
    """True iff every nonempty pairwise intersection of members is a member."""
    present = set(P.bits)
    for a in range(P.size):
        for b in range(a + 1, P.size):
            meet = P.bits[a] & P.bits[b]
            if meet and meet not in present:
                return False, (P.elements[a], P.elements[b])
    return True, None


def full_report(G, records, q=None) -> QuantumMatroidReport:
    P = build_poset(records)
    rep = check_axioms(P)
    ud, counts, wit = check_ud_and_counts(G, P, [r.w for r in records], q)
    closed, cw = check_intersection_closure(P)
    rep.ud_property = ud
    rep.pair_counts_ok = counts
    rep.intersection_closed = closed
    rep.witnesses.update(wit)
    if cw is not None:
        rep.witnesses["intersection"] = cw
    return rep
