import json
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from drgdesc import leonard as L
from drgdesc.graphs import SHIPPED, shipped
from drgdesc.subsets import analyze

nonzero = st.fractions(min_value=-7, max_value=7, max_denominator=3).filter(bool)
q_values = st.sampled_from([2, 3, -2, Fraction(1, 2), Fraction(-1, 3), 4])


@st.composite
def parameter_arrays(draw, cases=L.CASES, dmax=6):
    case = draw(st.sampled_from(cases))
    d = draw(st.integers(1, dmax))
    v = {k: draw(nonzero) for k in L.SCALAR_NAMES[case]}
    if "q" in v:
        v["q"] = draw(q_values)
    if case == "I":
        v["r2"] = v["s"] * v["s_star"] * v["q"] ** (d + 1) / v["r1"]
    elif case == "II":
        v["r2"] = v["s"] + v["s_star"] + d + 1 - v["r1"]
    elif case == "III":
        v["r2"] = -v["s"] - v["s_star"] + d + 1 - v["r1"]
    pa = L.ParameterArray.make(case, d, **v)
    try:
        L.expand(pa)
    except L.InfeasibleArray:
        assume(False)
    return pa


def beta_constant(seq):
    d = len(seq) - 1
    vals = {(seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]) for i in range(2, d)}
    return len(vals) <= 1


def satisfies_parameter_array_identities(ea):
    """The standard conditions characterising parameter arrays of Leonard systems."""
    th, ts, phi, down = ea.theta, ea.theta_star, ea.phi, ea.phi_down
    d = len(th) - 1
    for i in range(1, d + 1):
        s = sum((th[h] - th[d - h]) / (th[0] - th[d]) for h in range(i))
        if phi[i - 1] != down[0] * s + (ts[i] - ts[0]) * (th[i - 1] - th[d]):
            return False
        if down[i - 1] != phi[0] * s + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]):
            return False
    return beta_constant(th) and beta_constant(ts)


@settings(max_examples=300, deadline=None)
@given(parameter_arrays())
def test_expanded_arrays_are_parameter_arrays(pa):
    assert satisfies_parameter_array_identities(L.expand(pa))


@settings(max_examples=200, deadline=None)
@given(parameter_arrays())
def test_fit_reproduces_expansion(pa):
    ea = L.expand(pa)
    assert L.expand(L.fit_expanded(ea)) == ea


@settings(max_examples=100, deadline=None)
@given(parameter_arrays(), nonzero, nonzero, nonzero, nonzero)
def test_normalized_numbers_affine_invariant(pa, xi, zeta, xs, zs):
    ea = L.expand(pa)
    try:
        base = L.normalized_numbers(ea)
    except ZeroDivisionError:
        assume(False)
    assert L.normalized_numbers(ea.affine(xi, zeta, xs, zs)) == base
    assert L.affinely_equivalent(ea, ea.affine(xi, zeta, xs, zs))


@settings(max_examples=100, deadline=None)
@given(parameter_arrays())
def test_json_round_trip(pa):
    assert L.ParameterArray.from_json(json.loads(json.dumps(pa.to_json()))) == pa


@settings(max_examples=100, deadline=None)
@given(parameter_arrays(dmax=5))
def test_full_descendent_is_identity(pa):
    assert L.expand(L.rho_descendent(pa, pa.d, 0)) == L.expand(pa)


def test_infeasible_constraint():
    with pytest.raises(L.InfeasibleArray):
        L.expand(L.ParameterArray.make("II", 3, h=1, h_star=1, r1=1, r2=1, s=1, s_star=1, theta0=0, theta0_star=0))
    with pytest.raises(L.InfeasibleArray):
        L.expand(L.ParameterArray.make("IIC", 2, r=0, s=1, s_star=1, theta0=0, theta0_star=0))


EXPECTED_CASE = {
    "hamming": "IIC", "doob": "IIC", "johnson": "IIA", "halved_cube": "IIA",
    "grassmann": "I", "bilinear_forms": "I",
}


@pytest.fixture(scope="module")
def analyses():
    return {s: analyze(shipped(*s)) for s in SHIPPED}


@pytest.mark.parametrize("key", SHIPPED)
def test_graph_round_trip(key, analyses):
    G, A = shipped(*key), analyses[key]
    assert A.array.case == EXPECTED_CASE[key[0]]
    b, c = L.normalized_numbers(L.expand(A.array))
    assert b == tuple(map(Fraction, G.b)) and c == tuple(map(Fraction, G.c))


@pytest.mark.parametrize("key", SHIPPED)
def test_case_table_classical_parameters(key, analyses):
    from drgdesc.graphs import classical_parameters_of_family

    A = analyses[key]
    want = L.ClassicalParameters(*classical_parameters_of_family(*key))
    assert A.classical == want
    assert L.classical_from_case(A.array) == want


def test_hamming_fit_values(analyses):
    pa = analyses[("hamming", (3, 2))].array
    assert (pa.r, pa.s, pa.s_star) == (2, -2, -2)


def test_grassmann_and_bilinear_shapes(analyses):
    g = analyses[("grassmann", (2, 4, 2))].array
    assert g.s_star == 0 and g.r1 == 0 and abs(g.q) > 1
    bl = analyses[("bilinear_forms", (2, 2, 3))].array
    assert bl.s == 0 and bl.s_star == 0 and bl.r1 == 0


@pytest.mark.parametrize("q", [2, 3])
def test_classical_detection_round_trip(q):
    for d in (3, 4):
        for alpha in (0, q, q - 1):
            for beta in (q**2 - 1, q**3 - 1):
                br = [(q**i - 1) // (q - 1) for i in range(d + 1)]
                b = tuple((br[d] - br[i]) * (beta - alpha * br[i]) for i in range(d + 1))
                c = (0,) + tuple(br[i] * (1 + alpha * br[i - 1]) for i in range(1, d + 1))
                assert L.detect_classical((b, c)) == L.ClassicalParameters(d, q, alpha, beta)


def test_d_le_2_detection_is_ambiguous_but_verifiable():
    # K_4: every q gives classical parameters of diameter 1
    arrays = ((3, 0), (0, 1))
    assert L.has_classical_parameters(arrays, L.ClassicalParameters(1, 2, 0, 3))
    assert L.has_classical_parameters(arrays, L.ClassicalParameters(1, 1, 0, 3))
    assert L.detect_classical(arrays, prefer_q=2).q == 2


def test_rho_descendent_rejects_bad_dprime(analyses):
    pa = analyses[("hamming", (3, 2))].array
    with pytest.raises(ValueError):
        L.rho_descendent(pa, 4, 0)


@pytest.mark.parametrize("key", SHIPPED)
def test_predict_connectivity_trivial_widths(key, analyses):
    pa = analyses[key].array
    d = pa.d
    assert L.predict_connectivity(pa, 0) and L.predict_connectivity(pa, d) and L.predict_connectivity(pa, d - 1)


def test_predict_connectivity_case_three():
    s, ss, r1 = Fraction(1, 3), Fraction(1, 5), Fraction(1, 2)
    pa = L.ParameterArray.make("III", 6, h=1, h_star=1, r1=r1, r2=7 - s - ss - r1, s=s, s_star=ss, theta0=0, theta0_star=0)
    L.expand(pa)
    assert not L.predict_connectivity(pa, 1) and not L.predict_connectivity(pa, 3)
    assert L.predict_connectivity(pa, 2) and L.predict_connectivity(pa, 4)
    assert L.predict_connectivity(pa, 5) and L.predict_connectivity(pa, 6)


def test_predict_connectivity_other_cases_connected():
    pa = L.ParameterArray.make("IIC", 6, r=2, s=-2, s_star=-2, theta0=6, theta0_star=6)
    assert all(L.predict_connectivity(pa, w) for w in range(7))
