"""Width, dual width and descendents of vertex subsets.

Vertex subsets are passed around as sorted tuples of vertex indices.  The
dual width test is an exact nonzero test on Yhat^T E_i Yhat, which only
depends on how many ordered pairs of Y lie at each distance.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from . import ffield
from . import leonard as L
from .graphs import DistanceRegularGraph, induced_subgraph, make_drg, NotDistanceRegular
from .scheme import QPolyOrdering, SchemeData, build_scheme, pair_distance_counts

EXHAUSTIVE_CAP = 20
SEARCH_BUDGET = 10**6

VertexSet = tuple


class NotADescendent(ValueError):
    pass


@dataclass(frozen=True)
class SubsetProfile:
    Y: VertexSet
    w: int
    w_star: int
    rho: int
    is_descendent: bool
    is_convex: bool
    is_completely_regular: bool
    is_strongly_closed: bool


@dataclass(frozen=True)
class DescendentRecord:
    profile: SubsetProfile
    induced_connected: bool
    induced_ia: tuple | None  # (b_0..b_d, c_0..c_d) of the induced graph
    generator: str
    predicted_connected: bool | None = None
    induced_diameter: int | None = None

    @property
    def Y(self) -> VertexSet:
        return self.profile.Y

    @property
    def w(self) -> int:
        return self.profile.w

    @property
    def w_star(self) -> int:
        return self.profile.w_star


def canonical_key(Y: Sequence[int]):
    return (len(Y), tuple(Y))


def record_key(rec: DescendentRecord):
    return (rec.w, tuple(rec.Y))


def as_vertex_set(Y: Iterable[int], n: int) -> VertexSet:
    out = tuple(sorted({int(y) for y in Y}))
    if not out:
        raise ValueError("empty vertex set")
    if out[0] < 0 or out[-1] >= n:
        raise ValueError("vertex index out of range")
    return out


# --------------------------------------------------------------------------
# profiles
# --------------------------------------------------------------------------


def width(G: DistanceRegularGraph, Y) -> int:
    idx = np.asarray(Y, dtype=np.intp)
    return int(G.dist[np.ix_(idx, idx)].max())


def dual_width_from_counts(S: SchemeData, ordering: QPolyOrdering, counts) -> int:
    for i in range(S.d, -1, -1):
        if S.quadratic_form(ordering.perm[i], counts) != 0:
            return i
    raise AssertionError("Yhat^T E_0 Yhat is never zero for nonempty Y")


def dual_width(S: SchemeData, ordering: QPolyOrdering, Y) -> int:
    return dual_width_from_counts(S, ordering, pair_distance_counts(S.G, Y))


def distance_to_set(G: DistanceRegularGraph, Y) -> np.ndarray:
    return G.dist[:, np.asarray(Y, dtype=np.intp)].min(axis=1)


def covering_radius(G: DistanceRegularGraph, Y) -> int:
    return int(distance_to_set(G, Y).max())


def closure_slack(G: DistanceRegularGraph, Y) -> int | None:
    """min of d(x,z) + d(z,y) - d(x,y) over x, y in Y and z adjacent to Y.

    Y is convex iff the slack is positive and strongly closed iff it
    exceeds one.  Returns None when Y = X.  Restricting z to the boundary
    loses nothing: a witness z outside Y yields a boundary witness on a
    shortest path from z back into Y.
    """
    idx = np.asarray(Y, dtype=np.intp)
    boundary = np.flatnonzero(distance_to_set(G, idx) == 1)
    if len(boundary) == 0:
        return None
    dyo = G.dist[np.ix_(idx, boundary)]
    dyy = G.dist[np.ix_(idx, idx)]
    best = None
    # chunk over x so memory stays O(chunk * |Y| * |boundary|)
    chunk = max(1, 4_000_000 // max(1, len(idx) * len(boundary)))
    for start in range(0, len(idx), chunk):
        rows = slice(start, start + chunk)
        total = dyo[rows][:, None, :] + dyo[None, :, :] - dyy[rows][:, :, None]
        m = int(total.min())
        best = m if best is None else min(best, m)
        if best == 0:
            break
    return best


def is_convex(G: DistanceRegularGraph, Y) -> bool:
    slack = closure_slack(G, Y)
    return slack is None or slack > 0


def is_strongly_closed(G: DistanceRegularGraph, Y) -> bool:
    slack = closure_slack(G, Y)
    return slack is None or slack > 1


def distance_partition(G: DistanceRegularGraph, Y) -> np.ndarray:
    return distance_to_set(G, Y)


def is_completely_regular(G: DistanceRegularGraph, Y) -> bool:
    """A times each cell indicator must be constant on every cell.

    This is exactly the solvability of A Yhat_i in span{Yhat_j}.
    """
    part = distance_partition(G, Y)
    rho = int(part.max())
    onehot = np.zeros((G.n, rho + 1), dtype=np.int64)
    onehot[np.arange(G.n), part] = 1
    counts = G.adjacency_csr @ onehot
    for j in range(rho + 1):
        block = counts[part == j]
        if not (block == block[0]).all():
            return False
    return True


def profile(S: SchemeData, ordering: QPolyOrdering, Y) -> SubsetProfile:
    G = S.G
    Y = as_vertex_set(Y, G.n)
    counts = pair_distance_counts(G, Y)
    w = int(np.flatnonzero(counts)[-1])
    ws = dual_width_from_counts(S, ordering, counts)
    rho = covering_radius(G, Y)
    slack = closure_slack(G, Y)
    return SubsetProfile(
        Y=Y,
        w=w,
        w_star=ws,
        rho=rho,
        is_descendent=(w + ws == S.d),
        is_convex=slack is None or slack > 0,
        is_completely_regular=is_completely_regular(G, Y),
        is_strongly_closed=slack is None or slack > 1,
    )


# --------------------------------------------------------------------------
# analysis context
# --------------------------------------------------------------------------


@dataclass(eq=False)
class Analysis:
    """A graph with its scheme, chosen ordering, classical parameters and array."""

    G: DistanceRegularGraph
    S: SchemeData
    ordering: QPolyOrdering
    classical: L.ClassicalParameters | None
    array: L.ParameterArray | None

    @property
    def d(self) -> int:
        return self.G.d

    def profile(self, Y) -> SubsetProfile:
        return profile(self.S, self.ordering, Y)

    def record(self, Y, generator: str) -> DescendentRecord:
        return induced_analysis(self.G, self.S, self.ordering, Y, generator=generator, array=self.array)


def analyze(G: DistanceRegularGraph, prefer_q=None) -> Analysis:
    """Scheme, standard (or first) ordering, classical parameters and Leonard fit."""
    S = build_scheme(G)
    cp = L.detect_classical(G, prefer_q=prefer_q)
    ordering = S.standard_or_first_ordering(cp)
    try:
        pa = L.fit_from_graph(G, S, ordering, q_hint=cp.q if cp else None)
    except L.NoCaseFits:
        pa = None
    return Analysis(G, S, ordering, cp, pa)


# --------------------------------------------------------------------------
# induced subgraphs
# --------------------------------------------------------------------------


def induced_analysis(G, S, ordering, Y, generator: str = "direct", array=None, prof=None) -> DescendentRecord:
    prof = prof or profile(S, ordering, Y)
    if not prof.is_descendent:
        raise NotADescendent(f"w + w* = {prof.w + prof.w_star} != d = {S.d}")
    sub = induced_subgraph(G, prof.Y)
    dist = G.dist if len(prof.Y) == G.n else sub.distances()
    connected = bool((dist >= 0).all())
    ia, diameter = None, None
    if connected:
        diameter = int(dist.max())
        try:
            H = make_drg(sub, dist=dist)
            ia = (H.b, H.c)
        except NotDistanceRegular:
            ia = None
    predicted = L.predict_connectivity(array, prof.w_star) if array is not None else None
    return DescendentRecord(prof, connected, ia, generator, predicted, diameter)


def induced_graph(G: DistanceRegularGraph, Y) -> DistanceRegularGraph:
    sub = induced_subgraph(G, Y)
    return make_drg(sub)


@dataclass
class TransitivityReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def descendents_within(A: Analysis, Y, candidates: Iterable[Sequence[int]]) -> TransitivityReport:
    """Z is a descendent of Gamma_Y iff it is one of Gamma, and dual widths add up."""
    Y = as_vertex_set(Y, A.G.n)
    py = A.profile(Y)
    if not py.is_descendent:
        raise NotADescendent("Y must be a descendent")
    H = induced_graph(A.G, Y)
    q = A.classical.q if A.classical else None
    sub = analyze(H, prefer_q=q) if H.d >= 1 else None
    position = {v: i for i, v in enumerate(Y)}
    report = TransitivityReport()
    yset = set(Y)
    for Z in candidates:
        Z = tuple(sorted(Z))
        if not set(Z) <= yset:
            continue
        pz = A.profile(Z)
        local = tuple(position[v] for v in Z)
        if sub is None:
            in_sub_desc, ws_sub = True, 0
        else:
            pl = sub.profile(local)
            in_sub_desc, ws_sub = pl.is_descendent, pl.w_star
        report.checked += 1
        if pz.is_descendent != in_sub_desc:
            report.failures.append(("descendent status differs", Z))
        elif pz.is_descendent and pz.w_star != ws_sub + py.w_star:
            report.failures.append(("dual widths do not add", Z))
    return report


# --------------------------------------------------------------------------
# exhaustive enumeration
# --------------------------------------------------------------------------


def _scaled_Q(S: SchemeData, ordering: QPolyOrdering) -> np.ndarray:
    d = S.d
    den = 1
    for j in range(d + 1):
        for i in range(d + 1):
            den = math.lcm(den, S.Q[j][i].denominator)
    out = np.zeros((d + 1, d + 1), dtype=np.int64)
    for j in range(d + 1):
        for i in range(d + 1):
            out[j, i] = int(S.Q[j][ordering.perm[i]] * den)
    return out


def exhaustive_masks(S: SchemeData, ordering: QPolyOrdering, cap: int = EXHAUSTIVE_CAP):
    """Widths and dual widths of every nonempty subset, indexed by bitmask."""
    G = S.G
    n, d = G.n, G.d
    if n > cap:
        raise ValueError(f"exhaustive enumeration is capped at {cap} vertices, graph has {n}")
    size = 1 << n
    counts = np.zeros((d + 1, size), dtype=np.int32)
    # rel[j][b] = bitmask of vertices below b at distance j from b
    rel = np.zeros((d + 1, n), dtype=np.int64)
    for b in range(n):
        for v in range(b):
            rel[G.dist[b, v], b] |= 1 << v
    for b in range(n):
        lo = np.arange(1 << b, dtype=np.int64)
        hi = lo + (1 << b)
        counts[0, hi] = counts[0, lo] + 1
        for j in range(1, d + 1):
            counts[j, hi] = counts[j, lo] + 2 * np.bitwise_count(lo & rel[j, b]).astype(np.int32)
    width = np.zeros(size, dtype=np.int8)
    for j in range(1, d + 1):
        width[counts[j] > 0] = j
    qs = _scaled_Q(S, ordering)
    dual = np.full(size, -1, dtype=np.int8)
    for i in range(d, -1, -1):
        value = np.zeros(size, dtype=np.int64)
        for j in range(d + 1):
            value += qs[j, i] * counts[j].astype(np.int64)
        dual[(dual < 0) & (value != 0)] = i
    return width, dual


def _mask_to_set(mask: int) -> VertexSet:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def enumerate_exhaustive(A: Analysis, cap: int = EXHAUSTIVE_CAP, workers: int = 1) -> list[DescendentRecord]:
    width, dual = exhaustive_masks(A.S, A.ordering, cap)
    hits = np.flatnonzero((width.astype(np.int16) + dual) == A.d)
    hits = hits[hits > 0]
    sets = [_mask_to_set(int(m)) for m in hits]
    return _records(A, sets, "exhaustive", workers)


def _records(A: Analysis, sets, generator, workers=1) -> list[DescendentRecord]:
    sets = sorted(set(sets), key=canonical_key)

    def one(Y):
        return A.record(Y, generator)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            recs = list(ex.map(one, sets))
    else:
        recs = [one(Y) for Y in sets]
    recs.sort(key=record_key)
    return recs


# --------------------------------------------------------------------------
# known forms
# --------------------------------------------------------------------------


def _all_subspaces(q: int, n: int):
    for k in range(n + 1):
        yield from ffield.subspaces(q, n, k)


def _codes(basis, q) -> np.ndarray:
    return np.array(sorted(ffield.encode(v, q) for v in ffield.span(basis, q)) or [0], dtype=np.intp)


def _membership(spaces, q, dim) -> np.ndarray:
    member = np.zeros((len(spaces), q**dim), dtype=bool)
    for i, basis in enumerate(spaces):
        member[i, _codes(basis, q)] = True
    return member


def known_form_sets(G: DistanceRegularGraph) -> list[tuple[str, VertexSet]]:
    """Every subset of the classified descendent shapes for the graph's family."""
    fam, p = G.family, G.params
    n = G.n
    out: list[tuple[str, VertexSet]] = []

    def add(tag, members):
        Y = tuple(int(i) for i in np.flatnonzero(members)) if isinstance(members, np.ndarray) else tuple(members)
        if Y:
            out.append((tag, Y))

    if fam == "hamming":
        d, ell = p
        words = G.extra["words"]
        for k in range(d + 1):
            for coords in itertools.combinations(range(d), k):
                for vals in itertools.product(range(ell), repeat=k):
                    mask = np.ones(n, dtype=bool)
                    for c, v in zip(coords, vals):
                        mask &= words[:, c] == v
                    add("hamming-fix", mask)
    elif fam == "johnson":
        nu, d = p
        member = np.zeros((n, nu), dtype=bool)
        for i, s in enumerate(G.extra["subsets"]):
            member[i, [x - 1 for x in s]] = True
        for k in range(d + 1):
            for u in itertools.combinations(range(nu), k):
                add("johnson-i", member[:, list(u)].all(axis=1))
        if nu == 2 * d:
            for k in range(d, 2 * d + 1):
                for u in itertools.combinations(range(nu), k):
                    outside = np.ones(nu, dtype=bool)
                    outside[list(u)] = False
                    add("johnson-ii", ~member[:, outside].any(axis=1))
    elif fam == "grassmann":
        q, nu, d = p
        member = _membership(G.extra["subspaces"], q, nu)
        for u in _all_subspaces(q, nu):
            k = len(u)
            codes = _codes(u, q)
            if k <= d:
                add("grassmann-i", member[:, codes].all(axis=1))
            if nu == 2 * d and k >= d:
                inside = np.zeros(q**nu, dtype=bool)
                inside[codes] = True
                add("grassmann-ii", ~member[:, ~inside].any(axis=1))
    elif fam == "bilinear_forms":
        q, d, e = p
        dim = d + e
        spaces = []
        for m in G.extra["matrices"]:
            spaces.append(tuple(tuple([1 if c == r else 0 for c in range(d)] + list(m[r])) for r in range(d)))
        member = _membership(spaces, q, dim)
        E = tuple(tuple(1 if c == d + t else 0 for c in range(dim)) for t in range(e))
        for u in _all_subspaces(q, dim):
            k = len(u)
            meet = k + e - ffield.rank(list(u) + list(E), q)
            codes = _codes(u, q)
            if k <= d and meet == 0:
                add("bilinear-i", member[:, codes].all(axis=1))
            if d == e and k >= d and meet == k - d:
                inside = np.zeros(q**dim, dtype=bool)
                inside[codes] = True
                add("bilinear-ii", ~member[:, ~inside].any(axis=1))
    elif fam == "doob":
        sizes = G.extra["factor_sizes"]
        coords = np.stack(np.unravel_index(np.arange(n), sizes), axis=1)
        for choice in itertools.product(*[[None] + list(range(s)) for s in sizes]):
            mask = np.ones(n, dtype=bool)
            for f, v in enumerate(choice):
                if v is not None:
                    mask &= coords[:, f] == v
            add("doob-product", mask)
    elif fam == "halved_cube":
        (nn,) = p
        d = nn // 2
        words = G.extra["words"]
        for x in range(n):
            add("trivial", [x])
        add("trivial", range(n))
        if nn == 2 * d:
            for z in itertools.product((0, 1), repeat=nn):
                if sum(z) % 2 == 1:
                    diff = (words != np.array(z)).sum(axis=1)
                    add("halved-cube-i", diff == 1)
            for i in range(nn):
                for a in (0, 1):
                    add("halved-cube-ii", words[:, i] == a)
    else:
        raise ValueError(f"no known descendent forms for family {fam!r}")
    return out


def enumerate_known_forms(A: Analysis, workers: int = 1) -> list[DescendentRecord]:
    """Profile every classified shape; abort if any of them is not a descendent."""
    tagged: dict[VertexSet, str] = {}
    for tag, Y in known_form_sets(A.G):
        prev = tagged.get(Y)
        # keep a deterministic tag when forms overlap
        tagged[Y] = tag if prev is None else min(prev, tag)
    sets = sorted(tagged, key=canonical_key)

    def one(Y):
        prof = A.profile(Y)
        if not prof.is_descendent:
            raise AssertionError(f"known form {tagged[Y]} {Y} is not a descendent of {A.G.name}")
        return induced_analysis(A.G, A.S, A.ordering, Y, f"known-form:{tagged[Y]}", A.array, prof)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            recs = list(ex.map(one, sets))
    else:
        recs = [one(Y) for Y in sets]
    recs.sort(key=record_key)
    return recs


# --------------------------------------------------------------------------
# heuristic search
# --------------------------------------------------------------------------


def convex_closure(G: DistanceRegularGraph, Y) -> VertexSet:
    mask = np.zeros(G.n, dtype=bool)
    mask[list(Y)] = True
    dist = G.dist.astype(np.int32)
    while True:
        idx = np.flatnonzero(mask)
        dy = dist[idx]
        dyy = dy[:, idx]
        add = np.zeros(G.n, dtype=bool)
        chunk = max(1, 4_000_000 // max(1, len(idx) * G.n))
        for start in range(0, len(idx), chunk):
            rows = slice(start, start + chunk)
            on_geodesic = (dy[rows][:, None, :] + dy[None, :, :]) == dyy[rows][:, :, None]
            add |= on_geodesic.any(axis=(0, 1))
        new = mask | add
        if (new == mask).all():
            return tuple(int(i) for i in idx)
        mask = new


@dataclass
class SearchResult:
    records: list
    exhausted: bool
    closure_ops: int
    complete: bool = False  # never claimed; completeness is heuristic


def enumerate_search(A: Analysis, budget: int = SEARCH_BUDGET, workers: int = 1) -> SearchResult:
    G = A.G
    d, n = G.d, G.n
    found: set[VertexSet] = set()

    def consider(Y):
        if A.profile(Y).is_descendent:
            found.add(Y)

    for x in range(n):
        found.add((x,))
    found.add(tuple(range(n)))
    graph = nx.from_numpy_array(G.graph.adjacency.astype(np.int8))
    for clique in nx.find_cliques(graph):
        if len(clique) > 1:
            consider(tuple(sorted(clique)))

    ops = 0
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    pairs = pairs[: max(0, budget)]

    def close(pair):
        return convex_closure(G, pair)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            hulls = list(ex.map(close, pairs))
    else:
        hulls = [close(pq) for pq in pairs]
    ops += len(hulls)
    exhausted = len(pairs) < n * (n - 1) // 2

    frontier = deque(sorted(set(hulls), key=canonical_key))
    seen: set[VertexSet] = set()
    while frontier:
        C = frontier.popleft()
        if C in seen:
            continue
        seen.add(C)
        consider(C)
        w = width(G, C)
        if w >= d:
            continue
        near = np.flatnonzero(distance_to_set(G, C) == 1)
        for z in near:
            if ops >= budget:
                exhausted = True
                break
            if G.dist[z, list(C)].max() > w:
                continue
            C2 = convex_closure(G, C + (int(z),))
            ops += 1
            if C2 not in seen and width(G, C2) == w:
                frontier.append(C2)
        if exhausted:
            break
    recs = _records(A, found, "search", workers)
    return SearchResult(recs, exhausted, ops)


# --------------------------------------------------------------------------
# enumeration by mode
# --------------------------------------------------------------------------


def enumerate_descendents(A: Analysis, mode: str = "auto", budget: int = SEARCH_BUDGET, workers: int = 1):
    """Return (records, generator_mode, complete_flag)."""
    if mode == "auto":
        if A.G.n <= EXHAUSTIVE_CAP:
            mode = "exhaustive"
        else:
            mode = "known" if A.G.family is not None else "search"
    if mode == "exhaustive":
        return enumerate_exhaustive(A, workers=workers), mode, True
    if mode == "known":
        if A.G.family is None:
            raise ValueError("known-form enumeration needs a named family")
        return enumerate_known_forms(A, workers=workers), mode, True
    if mode == "search":
        res = enumerate_search(A, budget, workers)
        return res.records, mode, False
    raise ValueError(f"unknown enumeration mode {mode!r}")


def random_subsets(n: int, count: int, seed: int = 0) -> list[VertexSet]:
    """Uniformly random nonempty subsets (each vertex kept with probability 1/2)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        mask = rng.integers(0, 2, size=n).astype(bool)
        if mask.any():
            out.append(tuple(int(i) for i in np.flatnonzero(mask)))
    return out
