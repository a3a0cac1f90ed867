"""Graph families with classical parameters, plus generic graph plumbing.

Every constructor returns a :class:`DistanceRegularGraph` whose intersection
numbers were checked over all vertex pairs.  Adjacency and distance matrices
are numpy arrays; all counts derived from them are integers.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import ffield
from .exactmath import qbinomial

DEFAULT_BUDGET = 4096
BUDGET_ENV = "DRGDESC_BUDGET"


class BudgetExceeded(ValueError):
    pass


class NotDistanceRegular(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def current_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET


def _check_budget(n: int, budget: int | None) -> None:
    budget = current_budget() if budget is None else budget
    if n > budget:
        raise BudgetExceeded(f"{n} vertices exceeds the size budget {budget}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with a dense boolean adjacency matrix."""

    adjacency: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if len(self.labels) != adj.shape[0]:
            raise ValueError("one label per vertex required")
        if adj.shape[0] == 0:
            raise ValueError("empty vertex set")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        object.__setattr__(self, "adjacency", _frozen(adj))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def neighbors(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[x])

    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(i), int(j)) for i, j in zip(ii, jj)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def distances(self) -> np.ndarray:
        """All-pairs path distances; -1 marks unreachable pairs."""
        dist = shortest_path(csr_matrix(self.adjacency.astype(np.int8)), unweighted=True, directed=False)
        out = np.where(np.isinf(dist), -1, dist).astype(np.int16)
        return out

    def is_connected(self) -> bool:
        return bool((self.distances()[0] >= 0).all())

    def to_json(self) -> dict:
        return {"n": self.n, "labels": list(self.labels), "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        n = int(obj["n"])
        labels = obj.get("labels") or [str(i) for i in range(n)]
        adj = np.zeros((n, n), dtype=bool)
        for i, j in obj["edges"]:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            adj[i, j] = adj[j, i] = True
        return cls(adj, tuple(str(x) for x in labels))


@dataclass(frozen=True, eq=False)
class DistanceRegularGraph:
    """A graph together with its verified intersection array."""

    graph: Graph
    dist: np.ndarray
    b: tuple[int, ...]  # b_0 .. b_d (b_d = 0)
    c: tuple[int, ...]  # c_0 .. c_d (c_0 = 0)
    family: str | None = None
    params: tuple = ()
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return len(self.b) - 1

    @property
    def k(self) -> int:
        return self.b[0]

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.k - bi - ci for bi, ci in zip(self.b, self.c))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.labels

    @property
    def intersection_array(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The pair ({b_0..b_{d-1}}, {c_1..c_d})."""
        return self.b[:-1], self.c[1:]

    @property
    def name(self) -> str:
        if self.family is None:
            return f"graph(n={self.n})"
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    @cached_property
    def adjacency_csr(self) -> csr_matrix:
        # integer sparse copy for neighbour counting
        return csr_matrix(self.graph.adjacency.astype(np.int64))

    def valencies(self) -> tuple[int, ...]:
        """k_i = |Gamma_i(x)|."""
        ks = [1]
        for i in range(1, self.d + 1):
            ks.append(ks[-1] * self.b[i - 1] // self.c[i])
        return tuple(ks)


def verify_distance_regular(graph: Graph, dist: np.ndarray | None = None):
    """Check every pair and return (dist, b, c); raise NotDistanceRegular otherwise."""
    if dist is None:
        dist = graph.distances()
    if (dist < 0).any():
        x, y = map(int, np.argwhere(dist < 0)[0])
        raise NotDistanceRegular("graph is disconnected", witness=(x, y))
    n = graph.n
    d = int(dist.max())
    # counts are small integers, so float64 products are exact
    adj = graph.adjacency.astype(np.float64)
    layers = [(dist == i) for i in range(d + 1)]
    b, c = [], []
    for i in range(d + 1):
        mask = layers[i]
        if i + 1 <= d:
            counts = adj @ layers[i + 1].astype(np.float64)
            b.append(_constant_on(counts, mask, f"b_{i}"))
        else:
            b.append(0)
        if i >= 1:
            counts = adj @ layers[i - 1].astype(np.float64)
            c.append(_constant_on(counts, mask, f"c_{i}"))
        else:
            c.append(0)
    for i in range(1, d + 1):
        if b[i - 1] * c[i] == 0:
            raise NotDistanceRegular(f"b_{i - 1} c_{i} = 0")
    degrees = graph.adjacency.sum(axis=1)
    if n > 1 and not (degrees == b[0]).all():
        raise NotDistanceRegular("graph is not regular")
    return dist, tuple(b), tuple(c)


def _constant_on(counts: np.ndarray, mask: np.ndarray, what: str) -> int:
    values = counts[mask]
    lo, hi = values.min(), values.max()
    if lo != hi:
        y, x = map(int, np.argwhere(mask & (counts != lo))[0])
        raise NotDistanceRegular(f"{what} is not well defined", witness=(x, y))
    return int(round(lo))


def make_drg(graph: Graph, family=None, params=(), dist=None, **extra) -> DistanceRegularGraph:
    dist, b, c = verify_distance_regular(graph, dist)
    return DistanceRegularGraph(graph, _frozen(dist.astype(np.int16)), b, c, family, tuple(params), extra)


def classical_array(d: int, q, alpha, beta):
    """(b_0..b_d, c_0..c_d) from classical parameters (d, q, alpha, beta)."""
    def br(i):
        return qbinomial(i, 1, q) if i > 0 else 0

    b = [(br(d) - br(i)) * (beta - alpha * br(i)) for i in range(d + 1)]
    c = [br(i) * (1 + alpha * br(i - 1)) if i > 0 else 0 for i in range(d + 1)]
    return tuple(b), tuple(c)


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def _from_distance(dist: np.ndarray, labels, family, params, **extra) -> DistanceRegularGraph:
    graph = Graph(dist == 1, tuple(labels))
    return make_drg(graph, family, params, **extra)


def hamming(d: int, ell: int, budget: int | None = None) -> DistanceRegularGraph:
    if d < 1 or ell < 2:
        raise ValueError("hamming needs d >= 1 and ell >= 2")
    n = ell ** d
    _check_budget(n, budget)
    words = np.array(list(itertools.product(range(ell), repeat=d)), dtype=np.int16).reshape(n, d)
    dist = np.zeros((n, n), dtype=np.int16)
    for k in range(d):
        dist += words[:, k][:, None] != words[:, k][None, :]
    sep = "" if ell <= 10 else ","
    labels = [sep.join(str(int(s)) for s in w) for w in words]
    return _from_distance(dist, labels, "hamming", (d, ell), words=words)


def johnson(nu: int, d: int, budget: int | None = None) -> DistanceRegularGraph:
    if d < 1 or nu < 2 * d:
        raise ValueError("johnson needs d >= 1 and nu >= 2d")
    n = math.comb(nu, d)
    _check_budget(n, budget)
    subsets = list(itertools.combinations(range(1, nu + 1), d))
    member = np.zeros((n, nu), dtype=np.int32)
    for i, s in enumerate(subsets):
        member[i, [x - 1 for x in s]] = 1
    meet = member @ member.T
    dist = (d - meet).astype(np.int16)
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return _from_distance(dist, labels, "johnson", (nu, d), subsets=subsets)


SHRIKHANDE_CONNECTION = ((1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3))


def shrikhande_graph() -> Graph:
    pts = [(a, b) for a in range(4) for b in range(4)]
    diffs = set(SHRIKHANDE_CONNECTION)
    adj = np.array([[((u[0] - v[0]) % 4, (u[1] - v[1]) % 4) in diffs for v in pts] for u in pts])
    return Graph(adj, tuple(f"s{a}{b}" for a, b in pts))


def complete_graph(n: int, prefix: str = "k") -> Graph:
    adj = ~np.eye(n, dtype=bool)
    return Graph(adj, tuple(f"{prefix}{i}" for i in range(n)))


def cartesian_product(factors: Sequence[Graph]) -> Graph:
    adj = np.zeros((1, 1), dtype=np.int8)
    labels = [""]
    for g in factors:
        m = g.adjacency.astype(np.int8)
        adj = np.kron(adj, np.eye(g.n, dtype=np.int8)) + np.kron(np.eye(adj.shape[0], dtype=np.int8), m)
        labels = [f"{a}.{b}" if a else b for a in labels for b in g.labels]
    return Graph(adj.astype(bool), tuple(labels))


def doob(d1: int, d2: int, budget: int | None = None) -> DistanceRegularGraph:
    if d1 < 0 or d2 < 0 or d1 + d2 < 1:
        raise ValueError("doob needs d1, d2 >= 0 and d1 + d2 >= 1")
    n = 16 ** d1 * 4 ** d2
    _check_budget(n, budget)
    factors = [shrikhande_graph()] * d1 + [complete_graph(4)] * d2
    graph = cartesian_product(factors)
    return make_drg(graph, "doob", (d1, d2), factor_sizes=tuple(f.n for f in factors))


def halved_cube(n: int, budget: int | None = None) -> DistanceRegularGraph:
    if n < 4:
        raise ValueError("halved_cube needs n >= 4")
    size = 2 ** (n - 1)
    _check_budget(size, budget)
    words = np.array([w for w in itertools.product((0, 1), repeat=n) if sum(w) % 2 == 0], dtype=np.int16)
    ham = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    dist = (ham // 2).astype(np.int16)
    labels = ["".join(map(str, w)) for w in words]
    return _from_distance(dist, labels, "halved_cube", (n,), words=words)


def halved_cube_classical(n: int):
    d = n // 2
    m = 2 * d - 1 if n == 2 * d else 2 * d + 1
    return d, 1, 2, m


def grassmann(q: int, nu: int, d: int, budget: int | None = None) -> DistanceRegularGraph:
    ffield.check_field(q)
    if d < 1 or nu < 2 * d:
        raise ValueError("grassmann needs d >= 1 and nu >= 2d")
    n = int(qbinomial(nu, d, q))
    _check_budget(n, budget)
    spaces = list(ffield.subspaces(q, nu, d))
    member = np.zeros((n, q ** nu), dtype=np.int64)
    for i, basis in enumerate(spaces):
        member[i, [ffield.encode(v, q) for v in ffield.span(basis, q)]] = 1
    meet = member @ member.T
    meet_dim = np.rint(np.log(meet) / math.log(q)).astype(np.int16)
    if not (np.power(q, meet_dim.astype(np.int64)) == meet).all():
        raise AssertionError("intersection sizes are not powers of q")
    dist = (d - meet_dim).astype(np.int16)
    labels = [ffield.matrix_label(b) for b in spaces]
    return _from_distance(dist, labels, "grassmann", (q, nu, d), subspaces=spaces)


def bilinear_forms(q: int, d: int, e: int, budget: int | None = None) -> DistanceRegularGraph:
    ffield.check_field(q)
    if d < 1 or e < d:
        raise ValueError("bilinear_forms needs 1 <= d <= e")
    n = q ** (d * e)
    _check_budget(n, budget)
    mats = list(itertools.product(range(q), repeat=d * e))
    ranks = np.array([ffield.rank([m[r * e:(r + 1) * e] for r in range(d)], q) for m in mats], dtype=np.int16)
    digits = np.array(mats, dtype=np.int64).reshape(n, d * e)
    diff_index = np.zeros((n, n), dtype=np.int64)
    for k in range(d * e):
        diff_index = diff_index * q + (digits[:, k][:, None] - digits[:, k][None, :]) % q
    dist = ranks[diff_index]
    matrices = [tuple(tuple(m[r * e:(r + 1) * e]) for r in range(d)) for m in mats]
    labels = [ffield.matrix_label(m) for m in matrices]
    return _from_distance(dist, labels, "bilinear_forms", (q, d, e), matrices=matrices)


FAMILIES = {
    "hamming": (hamming, 2),
    "johnson": (johnson, 2),
    "doob": (doob, 2),
    "halved_cube": (halved_cube, 1),
    "grassmann": (grassmann, 3),
    "bilinear_forms": (bilinear_forms, 3),
}

# desk-scale parameter sets exercised by the test and acceptance suites
SHIPPED = (
    ("hamming", (3, 2)),
    ("hamming", (4, 2)),
    ("hamming", (2, 3)),
    ("hamming", (3, 3)),
    ("hamming", (3, 4)),
    ("johnson", (4, 2)),
    ("johnson", (6, 3)),
    ("johnson", (7, 3)),
    ("doob", (1, 0)),
    ("doob", (1, 1)),
    ("halved_cube", (5,)),
    ("halved_cube", (6,)),
    ("grassmann", (2, 4, 2)),
    ("grassmann", (3, 4, 2)),
    ("grassmann", (2, 6, 3)),
    ("bilinear_forms", (2, 2, 2)),
    ("bilinear_forms", (2, 2, 3)),
    ("bilinear_forms", (2, 3, 3)),
)


def build(family: str, params: Sequence[int], budget: int | None = None) -> DistanceRegularGraph:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    ctor, arity = FAMILIES[family]
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameters, got {len(params)}")
    return ctor(*params, budget=budget)


_CACHE: dict = {}


def shipped(family: str, params: Sequence[int]) -> DistanceRegularGraph:
    """Memoized constructor for the desk-scale parameter sets."""
    key = (family, tuple(params))
    if key not in _CACHE:
        _CACHE[key] = build(family, params)
    return _CACHE[key]


def classical_parameters_of_family(family: str, params: Sequence[int]):
    """Known classical parameters (d, q, alpha, beta) of a family member."""
    if family == "hamming":
        d, ell = params
        return d, 1, 0, ell - 1
    if family == "johnson":
        nu, d = params
        return d, 1, 1, nu - d
    if family == "doob":
        d1, d2 = params
        return 2 * d1 + d2, 1, 0, 3
    if family == "halved_cube":
        return halved_cube_classical(params[0])
    if family == "grassmann":
        q, nu, d = params
        return d, q, q, int(qbinomial(nu - d + 1, 1, q)) - 1
    if family == "bilinear_forms":
        q, d, e = params
        return d, q, q - 1, q ** e - 1
    raise ValueError(f"no classical parameters recorded for {family!r}")


# --------------------------------------------------------------------------
# utilities
# --------------------------------------------------------------------------


def distance_k_graph(G: DistanceRegularGraph, k: int) -> Graph:
    if not 1 <= k <= G.d:
        raise ValueError(f"k must lie in 1..{G.d}")
    return Graph(G.dist == k, G.labels)


def induced_subgraph(G: DistanceRegularGraph | Graph, Y: Iterable[int]) -> Graph:
    idx = sorted(set(int(y) for y in Y))
    if not idx:
        raise ValueError("empty vertex set")
    graph = G.graph if isinstance(G, DistanceRegularGraph) else G
    sub = graph.adjacency[np.ix_(idx, idx)]
    return Graph(sub, tuple(graph.labels[i] for i in idx))


def last_subconstituent(G: DistanceRegularGraph, x: int) -> Graph:
    far = np.flatnonzero(G.dist[x] == G.d)
    adj = G.dist[np.ix_(far, far)] == 2
    return Graph(adj, tuple(G.labels[i] for i in far))


def local_graph_signature(G: DistanceRegularGraph | Graph) -> tuple:
    """Sorted multiset of local-graph component sizes over all vertices.

    An isomorphism invariant cheap enough to separate Doob graphs from
    Hamming graphs with the same intersection array.
    """
    graph = G.graph if isinstance(G, DistanceRegularGraph) else G
    sigs = []
    for x in range(graph.n):
        nbrs = graph.neighbors(x)
        if len(nbrs) == 0:
            sigs.append(())
            continue
        local = Graph(graph.adjacency[np.ix_(nbrs, nbrs)], tuple(str(i) for i in nbrs))
        dist = local.distances()
        seen = np.zeros(len(nbrs), dtype=bool)
        comps = []
        for i in range(len(nbrs)):
            if not seen[i]:
                comp = dist[i] >= 0
                seen |= comp
                comps.append(int(comp.sum()))
        sigs.append(tuple(sorted(comps)))
    return tuple(sorted(sigs))
