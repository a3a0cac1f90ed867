from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgdesc import subsets as SB
from drgdesc.graphs import shipped

SMALL = [("hamming", (3, 2)), ("johnson", (4, 2)), ("hamming", (2, 3)), ("doob", (1, 0))]


@pytest.fixture(scope="module")
def analyses():
    return {k: SB.analyze(shipped(*k)) for k in SMALL + [("johnson", (6, 3)), ("hamming", (4, 2))]}


def brute_width(G, Y):
    return max(int(G.dist[x, y]) for x in Y for y in Y)


def brute_dual_width(A, Y):
    S, perm = A.S, A.ordering.perm
    yhat = np.zeros(A.G.n, dtype=object)
    yhat[list(Y)] = Fraction(1)
    best = 0
    for i in range(S.d + 1):
        E = S.E[perm[i]]
        val = sum(E[x, y] for x in Y for y in Y)
        if val != 0:
            best = i
    return best


def brute_convex(G, Y, slack=0):
    Ys = set(Y)
    for x in Y:
        for y in Y:
            for z in range(G.n):
                if z not in Ys and G.dist[x, z] + G.dist[z, y] <= G.dist[x, y] + slack:
                    return False
    return True


def brute_completely_regular(G, Y):
    part = G.dist[:, list(Y)].min(axis=1)
    cells = int(part.max()) + 1
    for i in range(cells):
        members = np.flatnonzero(part == i)
        profile = {tuple(np.bincount(part[G.graph.neighbors(x)], minlength=cells)) for x in members}
        if len(profile) != 1:
            return False
    return True


subsets_of_small = st.sampled_from(SMALL).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(0, shipped(*k).n - 1), min_size=1, unique=True))
)


@settings(max_examples=150, deadline=None)
@given(subsets_of_small)
def test_profile_matches_brute_force(data):
    key, Y = data
    G = shipped(*key)
    A = SB.analyze(G)
    Y = tuple(sorted(Y))
    p = A.profile(Y)
    assert p.w == brute_width(G, Y)
    assert p.w_star == brute_dual_width(A, Y)
    assert p.w + p.w_star >= G.d
    assert p.is_convex == brute_convex(G, Y)
    assert p.is_strongly_closed == brute_convex(G, Y, slack=1)
    assert p.is_completely_regular == brute_completely_regular(G, Y)
    assert p.rho == SB.covering_radius(G, Y) == int(G.dist[:, list(Y)].min(axis=1).max())


@pytest.mark.parametrize("key", [("hamming", (3, 2)), ("johnson", (4, 2)), ("hamming", (2, 3))])
def test_exhaustive_matches_brute_force(key, analyses):
    A = analyses[key]
    G = A.G
    want = []
    for size in range(1, G.n + 1):
        for Y in combinations(range(G.n), size):
            if brute_width(G, Y) + brute_dual_width(A, Y) == G.d:
                want.append(Y)
    got = SB.enumerate_exhaustive(A)
    assert sorted(r.Y for r in got) == sorted(want)


@pytest.mark.parametrize("key", SMALL + [("johnson", (6, 3)), ("hamming", (4, 2))])
def test_known_forms_match_exhaustive(key, analyses):
    A = analyses[key]
    assert [r.Y for r in SB.enumerate_known_forms(A)] == [r.Y for r in SB.enumerate_exhaustive(A)]


@pytest.mark.parametrize("key", SMALL)
def test_search_finds_everything_on_small_graphs(key, analyses):
    A = analyses[key]
    res = SB.enumerate_search(A)
    assert not res.exhausted and not res.complete
    assert [r.Y for r in res.records] == [r.Y for r in SB.enumerate_exhaustive(A)]


def test_search_budget_is_reported(analyses):
    res = SB.enumerate_search(analyses[("hamming", (4, 2))], budget=10)
    assert res.exhausted
    assert all(r.profile.is_descendent for r in res.records)


def test_descendent_counts(analyses):
    assert len(SB.enumerate_exhaustive(analyses[("hamming", (3, 2))])) == 27
    assert len(SB.enumerate_exhaustive(analyses[("hamming", (4, 2))])) == 81
    assert len(SB.enumerate_exhaustive(analyses[("johnson", (6, 3))])) == 63


def test_convex_closure_is_least_convex_superset(analyses):
    G = analyses[("hamming", (3, 2))].G
    convex = [set(Y) for k in range(1, 9) for Y in combinations(range(8), k) if brute_convex(G, Y)]
    for Y in [(0,), (0, 3), (0, 7), (1, 2, 4)]:
        want = set(range(8))
        for C in convex:
            if set(Y) <= C:
                want &= C
        assert set(SB.convex_closure(G, Y)) == want


def test_transitivity_inside_descendent(analyses):
    A = analyses[("hamming", (3, 2))]
    recs = SB.enumerate_exhaustive(A)
    face = next(r for r in recs if r.w == 2)
    rep = SB.descendents_within(A, face.Y, [r.Y for r in recs])
    assert rep.ok and rep.checked > 0


def test_not_a_descendent_and_validation(analyses):
    G = analyses[("hamming", (3, 2))].G
    with pytest.raises(ValueError):
        SB.as_vertex_set([], G.n)
    with pytest.raises(ValueError):
        SB.as_vertex_set([9], G.n)


def test_random_subsets_deterministic():
    assert SB.random_subsets(20, 5, seed=3) == SB.random_subsets(20, 5, seed=3)
    assert all(len(Y) > 0 for Y in SB.random_subsets(4, 50, seed=1))


def test_workers_do_not_change_results(analyses):
    A = analyses[("johnson", (6, 3))]
    one = [(r.Y, r.generator) for r in SB.enumerate_known_forms(A, workers=1)]
    four = [(r.Y, r.generator) for r in SB.enumerate_known_forms(A, workers=4)]
    assert one == four
