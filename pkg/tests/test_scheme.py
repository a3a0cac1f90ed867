from collections import Counter
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgdesc.graphs import SHIPPED, shipped
from drgdesc.scheme import build_scheme, check_scheme_axioms, pair_distance_counts

SMALL = [s for s in SHIPPED if shipped(*s).n <= 64]

TWO_ORDERINGS = {
    ("hamming", (4, 2)), ("hamming", (2, 3)), ("johnson", (6, 3)), ("doob", (1, 0)),
    ("halved_cube", (5,)), ("halved_cube", (6,)), ("grassmann", (2, 4, 2)),
    ("grassmann", (3, 4, 2)), ("bilinear_forms", (2, 2, 2)), ("bilinear_forms", (2, 2, 3)),
}


@pytest.fixture(scope="module")
def schemes():
    return {s: build_scheme(shipped(*s)) for s in SHIPPED}


@pytest.mark.parametrize("key", SMALL)
def test_spectrum_matches_numpy(key, schemes):
    G, S = shipped(*key), schemes[key]
    ev = np.linalg.eigvalsh(G.graph.adjacency.astype(float))
    counts = Counter(int(round(x)) for x in ev)
    assert dict(counts) == dict(zip(S.eigenvalues, S.multiplicities))


@pytest.mark.parametrize("key", SHIPPED)
def test_eigenmatrix_identities(key, schemes):
    S = schemes[key]
    d, n = S.d, S.n
    assert list(S.P[0]) == list(shipped(*key).valencies())
    assert sum(S.multiplicities) == n
    for i in range(d + 1):
        for k in range(d + 1):
            assert sum(S.P[i][j] * S.Q[j][k] for j in range(d + 1)) == (n if i == k else 0)
    assert all(x >= 0 for plane in S.krein for row in plane for x in row)
    assert check_scheme_axioms(S) == []


def krein_tridiagonal_orderings(S):
    """Orderings where E_1 o E_i only meets E_{i-1}, E_i, E_{i+1}, read from the Krein table."""
    d = S.d
    out = []
    for rest in permutations(range(1, d + 1)):
        perm = (0,) + rest
        e1 = perm[1]
        good = True
        for a in range(d + 1):
            for c in range(d + 1):
                q = S.krein[perm[c]][e1][perm[a]]
                if abs(a - c) > 1 and q != 0 or abs(a - c) == 1 and q == 0:
                    good = False
        if good:
            out.append(perm)
    return sorted(out)


@pytest.mark.parametrize("key", SHIPPED)
def test_qpoly_orderings_match_krein_oracle(key, schemes):
    S = schemes[key]
    found = sorted(o.perm for o in S.qpoly_orderings)
    assert found == krein_tridiagonal_orderings(S)
    assert tuple(range(S.d + 1)) in found
    assert len(found) == (2 if key in TWO_ORDERINGS else 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("hamming", (3, 2)), ("johnson", (4, 2)), ("hamming", (2, 3))]), st.data())
def test_dual_quadratic_form_matches_matrix_product(key, data):
    G = shipped(*key)
    S = build_scheme(G)
    Y = data.draw(st.lists(st.integers(0, G.n - 1), min_size=1, unique=True))
    counts = pair_distance_counts(G, Y)
    yhat = [Fraction(int(v in Y)) for v in range(G.n)]
    for i in range(S.d + 1):
        E = S.E[i]
        direct = sum(yhat[x] * E[x, y] * yhat[y] for x in range(G.n) for y in range(G.n))
        assert S.quadratic_form(i, counts) == direct


def test_idempotents_from_matrix_level(schemes):
    S = schemes[("hamming", (3, 2))]
    assert check_scheme_axioms(S, matrix_level=True) == []
