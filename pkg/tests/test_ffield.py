from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drgdesc import ffield


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 3), (3, 4)])
def test_subspace_counts(q, n):
    for k in range(n + 1):
        spaces = list(ffield.subspaces(q, n, k))
        assert len(spaces) == gaussian_binomial(n, k, q)
        assert len({ffield.span(s, q) for s in spaces}) == len(spaces)


@pytest.mark.parametrize("q", [2, 3])
def test_span_size(q):
    for basis in ffield.subspaces(q, 4, 2):
        assert len(ffield.span(basis, q)) == q**2


@given(st.sampled_from([2, 3]).flatmap(lambda q: st.tuples(
    st.just(q), st.lists(st.lists(st.integers(0, q - 1), min_size=4, max_size=4), min_size=1, max_size=4))))
def test_rref_is_idempotent_and_preserves_span(data):
    q, rows = data
    r = ffield.rref(rows, q)
    assert ffield.rref(r, q) == r
    assert ffield.span(r, q, 4) == ffield.span(rows, q, 4)
    assert ffield.rank(rows, q) == len(r)


def test_encode_is_base_q_first_coordinate_high():
    assert ffield.encode((1, 0, 2), 3) == 9 + 2
    codes = sorted(ffield.encode(v, 2) for v in product(range(2), repeat=3))
    assert codes == list(range(8))


def test_only_small_fields():
    with pytest.raises(ValueError):
        ffield.check_field(5)


def test_labels():
    assert ffield.vector_label((1, 0, 1)) == "101"
    assert ffield.matrix_label([(1, 0), (0, 1)]) == "10/01"
    assert ffield.matrix_label([]) == "0"
