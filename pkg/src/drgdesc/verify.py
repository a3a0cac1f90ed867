"""Run every theorem check on one graph and collect a report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import leonard as L
from . import qmatroid as QM
from . import subsets as SB
from .graphs import DistanceRegularGraph, classical_array, classical_parameters_of_family, verify_distance_regular
from .scheme import build_scheme, check_scheme_axioms, fits_standard_shape, pair_distance_counts

RANDOM_SUBSETS = 1000
AFFINE_TRIALS = 100
QMATROID_MAX_ELEMENTS = 300
TRANSITIVITY_MAX_VERTICES = 128
SEED = 20240601

# the statement each check tests, in one line
ANCHORS = {
    "distance-regularity": "intersection numbers b_i, c_i are well defined and b_{i-1} c_i > 0",
    "scheme axioms": "distance matrices and primitive idempotents form a symmetric association scheme",
    "Q-polynomial orderings": "E_1 o E_i is a combination of E_{i-1}, E_i, E_{i+1} with nonzero outer terms",
    "classical parameters": "classical parameters agree with those read off the parameter-array case",
    "descendent enumeration": "enumerated sets are exactly the subsets with w + w* = d",
    "fundamental inequality": "w + w* >= d for every nonempty subset",
    "complete regularity": "a descendent is completely regular with covering radius w*",
    "convexity": "with classical parameters, descendents with 1 < w < d are convex",
    "strong closure": "with classical parameters and alpha = 0, descendents with 1 < w < d are strongly closed",
    "inheritance": "a connected descendent has classical parameters (w, q, alpha, beta)",
    "connectivity": "a connected descendent is distance-regular of diameter w",
    "connectivity prediction": "connectivity of a descendent is decided by the case of the parent array",
    "Leonard round trip": "the fitted parameter array reproduces the intersection numbers",
    "affine invariance": "normalized intersection numbers are invariant under affine maps",
    "rho-descendent consistency": "the array of a connected descendent is the rho-descendent of the parent array",
    "transitivity": "a subset of a descendent is a descendent of it iff it is a descendent of the whole graph",
    "quantum matroid": "with (UD) for all i, the descendent poset is a regular quantum matroid",
}


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skipped
    witness: object = None
    detail: object = None
    seconds: float = 0.0

    @property
    def anchor(self) -> str:
        return ANCHORS[self.name]


@dataclass
class VerificationReport:
    graph: str
    checks: list = field(default_factory=list)
    descendents: list = field(default_factory=list)
    enumeration_mode: str = ""
    complete: bool = False
    analysis: object = None

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class _Runner:
    def __init__(self, report: VerificationReport):
        self.report = report

    def run(self, name, fn):
        t0 = time.perf_counter()
        try:
            status, witness, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            status, witness, detail = "fail", f"{type(exc).__name__}: {exc}", None
        self.report.checks.append(Check(name, status, witness, detail, time.perf_counter() - t0))
        return status


def _first(items):
    return items[0] if items else None


def random_affine(rng: np.random.Generator):
    def nonzero():
        while True:
            x = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 8)))
            if x:
                return x

    return nonzero(), Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 5))), nonzero(), Fraction(
        int(rng.integers(-20, 21)), int(rng.integers(1, 5))
    )


def check_fundamental_inequality(A: SB.Analysis, count=RANDOM_SUBSETS, seed=SEED):
    bad = []
    for Y in SB.random_subsets(A.G.n, count, seed):
        counts = pair_distance_counts(A.G, Y)
        w = int(np.flatnonzero(counts)[-1])
        ws = SB.dual_width_from_counts(A.S, A.ordering, counts)
        if w + ws < A.d:
            bad.append(Y)
    return bad


def check_affine_invariance(pa: L.ParameterArray, trials=AFFINE_TRIALS, seed=SEED):
    ea = L.expand(pa)
    base = L.normalized_numbers(ea)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        t = random_affine(rng)
        if L.normalized_numbers(ea.affine(*t)) != base:
            return t
    return None


class _InducedFits:
    """Graph-side parameter arrays of induced subgraphs, one per intersection array."""

    def __init__(self, A: SB.Analysis):
        self.A = A
        self.cache = {}

    def normalized(self, rec: SB.DescendentRecord):
        key = rec.induced_ia
        if key not in self.cache:
            H = SB.induced_graph(self.A.G, rec.Y)
            sub = SB.analyze(H, prefer_q=self.A.classical.q if self.A.classical else None)
            pa = sub.array
            self.cache[key] = (L.normalized_numbers(L.expand(pa)), sub.classical) if pa else (None, sub.classical)
        return self.cache[key]


def verify_all(G: DistanceRegularGraph, mode="auto", search_budget=SB.SEARCH_BUDGET, workers=1, form=None) -> VerificationReport:
    report = VerificationReport(G.name)
    R = _Runner(report)
    ctx: dict = {}

    def dr():
        _, b, c = verify_distance_regular(G.graph)
        if (b, c) != (G.b, G.c):
            return "fail", (b, c), None
        if G.family is not None:
            cp = classical_parameters_of_family(G.family, G.params)
            if classical_array(*cp) != (G.b, G.c):
                return "fail", cp, None
        return "pass", None, {"intersection_array": [list(G.b[:-1]), list(G.c[1:])]}

    if R.run("distance-regularity", dr) == "fail":
        return report

    def scheme():
        S = build_scheme(G)
        ctx["S"] = S
        problems = check_scheme_axioms(S)
        return ("fail" if problems else "pass"), _first(problems), {"eigenvalues": list(S.eigenvalues), "multiplicities": list(S.multiplicities)}

    if R.run("scheme axioms", scheme) == "fail":
        return report

    def orderings():
        S = ctx["S"]
        if not S.qpoly_orderings:
            return "fail", "no Q-polynomial ordering", None
        return "pass", None, {"orderings": [list(o.perm) for o in S.qpoly_orderings]}

    if R.run("Q-polynomial orderings", orderings) == "fail":
        return report

    def analysis():
        A = SB.analyze(G)
        ctx["A"] = A
        report.analysis = A
        return "pass", None, None

    R.run("classical parameters", lambda: _classical(ctx, analysis))
    A = ctx.get("A")
    if A is None:
        return report

    def enumerate_():
        recs, used, complete = SB.enumerate_descendents(A, mode, search_budget, workers)
        if form is not None:
            recs = [r for r in recs if r.generator == f"known-form:{form}"]
        report.descendents, report.enumeration_mode, report.complete = recs, used, complete
        detail = {"mode": used, "count": len(recs), "complete": complete}
        if used == "exhaustive" and G.family is not None:
            known = SB.enumerate_known_forms(A, workers=workers)
            if [r.Y for r in known] != [r.Y for r in recs]:
                return "fail", "known forms differ from exhaustive enumeration", detail
        return "pass", None, detail

    if R.run("descendent enumeration", enumerate_) == "fail":
        return report
    recs = report.descendents

    def fundamental():
        bad = check_fundamental_inequality(A)
        return ("fail" if bad else "pass"), _first(bad), {"samples": RANDOM_SUBSETS}

    R.run("fundamental inequality", fundamental)

    def complete_regularity():
        bad = [r.Y for r in recs if not (r.profile.is_completely_regular and r.profile.rho == r.w_star)]
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("complete regularity", complete_regularity)

    cp = A.classical

    def convexity():
        if cp is None:
            return "skipped", None, "no classical parameters"
        bad = [r.Y for r in recs if 1 < r.w < A.d and not r.profile.is_convex]
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("convexity", convexity)

    def strong_closure():
        if cp is None or cp.alpha != 0:
            return "skipped", None, "needs classical parameters with alpha = 0"
        bad = [r.Y for r in recs if 1 < r.w < A.d and not r.profile.is_strongly_closed]
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("strong closure", strong_closure)

    fits = _InducedFits(A)

    def inheritance():
        if cp is None:
            return "skipped", None, "no classical parameters"
        bad = []
        for r in recs:
            if not r.induced_connected or r.w == 0:
                continue
            if r.induced_ia is None:
                bad.append(r.Y)
                continue
            target = L.ClassicalParameters(r.w, cp.q, cp.alpha, cp.beta)
            if r.w >= 3:
                ok = L.detect_classical(r.induced_ia) == target
            else:
                ok = L.has_classical_parameters(r.induced_ia, target)
            if not ok:
                bad.append(r.Y)
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("inheritance", inheritance)

    def connectivity():
        bad = [r.Y for r in recs if r.induced_connected and (r.induced_ia is None or r.induced_diameter != r.w)]
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("connectivity", connectivity)

    def prediction():
        if A.array is None:
            return "skipped", None, "no parameter array"
        bad = [r.Y for r in recs if L.predict_connectivity(A.array, r.w_star) != r.induced_connected]
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("connectivity prediction", prediction)

    def round_trip():
        if A.array is None:
            return "fail", "no parameter array fits", None
        b, c = L.normalized_numbers(L.expand(A.array))
        if (b, c) != (tuple(map(Fraction, G.b)), tuple(map(Fraction, G.c))):
            return "fail", (b, c), None
        return "pass", None, A.array.to_json()

    R.run("Leonard round trip", round_trip)

    def affine():
        if A.array is None:
            return "skipped", None, "no parameter array"
        t = check_affine_invariance(A.array)
        return ("fail" if t else "pass"), t, {"trials": AFFINE_TRIALS}

    R.run("affine invariance", affine)

    def rho_consistency():
        if A.array is None:
            return "skipped", None, "no parameter array"
        bad = []
        for r in recs:
            if not r.induced_connected or r.w == 0:
                continue
            graph_side, _ = fits.normalized(r)
            array_side = L.normalized_numbers(L.expand(L.rho_descendent(A.array, r.w, 0)))
            if graph_side != array_side:
                bad.append(r.Y)
        return ("fail" if bad else "pass"), _first(bad), None

    R.run("rho-descendent consistency", rho_consistency)

    def transitivity():
        if G.n > TRANSITIVITY_MAX_VERTICES:
            return "skipped", None, f"more than {TRANSITIVITY_MAX_VERTICES} vertices"
        sets = [r.Y for r in recs]
        checked, bad = 0, []
        for r in recs:
            if not r.induced_connected or r.w in (0, A.d):
                continue
            rep = SB.descendents_within(A, r.Y, sets)
            checked += rep.checked
            bad.extend(rep.failures)
        return ("fail" if bad else "pass"), _first(bad), {"pairs": checked}

    R.run("transitivity", transitivity)

    def quantum():
        if len(recs) > QMATROID_MAX_ELEMENTS:
            return "skipped", None, f"family has more than {QMATROID_MAX_ELEMENTS} members"
        if not report.complete and form is None:
            return "skipped", None, "family not known to be complete"
        rep = QM.full_report(G, recs, cp.q if cp else None)
        detail = qmatroid_json(rep, A.d)
        if all(rep.ud_property):
            # with (UD) for all i the family must be a regular quantum matroid
            want = cp.as_tuple() if cp else None
            good = rep.axioms_hold and rep.intersection_closed and rep.pair_counts_ok and (
                want is None or rep.parameters(A.d) == want
            )
            return ("pass" if good else "fail"), (None if good else rep.witnesses), detail
        failing = [i for i, ok in enumerate(rep.ud_property) if not ok]
        return "pass", {"ud_fails": failing, "witness": rep.witnesses.get(f"ud_{failing[0]}")}, detail

    R.run("quantum matroid", quantum)
    return report


def _classical(ctx, analysis):
    analysis()
    A = ctx["A"]
    cp = A.classical
    case_cp = L.classical_from_case(A.array) if A.array else None
    if cp is None:
        if case_cp is not None:
            return "fail", "case table gives classical parameters but the array does not", None
        return "pass", None, {"classical": None}
    if not fits_standard_shape(A.ordering.dual_eigenvalues, cp.q):
        return "fail", "chosen ordering is not standard", None
    if case_cp is None or not L.has_classical_parameters(A.G, case_cp):
        return "fail", {"direct": str(cp.as_tuple()), "case_table": str(case_cp)}, None
    if A.d >= 3 and case_cp != cp:
        return "fail", {"direct": str(cp.as_tuple()), "case_table": str(case_cp.as_tuple())}, None
    return "pass", None, {"classical": classical_json(cp), "case": A.array.case if A.array else None}


def classical_json(cp):
    from .exactmath import format_rational as fr

    if cp is None:
        return None
    return {"d": cp.d, "q": cp.q, "alpha": fr(cp.alpha), "beta": fr(cp.beta)}


def qmatroid_json(rep: QM.QuantumMatroidReport, d: int) -> dict:
    return {
        "qm1": rep.qm1,
        "qm2": rep.qm2,
        "qm3": rep.qm3,
        "qm4": rep.qm4,
        "line_regular_q": rep.line_regular_q,
        "dual_line_regular_beta": rep.dual_line_regular_beta,
        "zigzag_regular_alpha": rep.zigzag_regular_alpha,
        "parameters": list(rep.parameters(d)) if rep.parameters(d) else None,
        "ud_property": rep.ud_property,
        "intersection_closed": rep.intersection_closed,
        "pair_counts_ok": rep.pair_counts_ok,
        "witnesses": {k: _plain(v) for k, v in sorted(rep.witnesses.items())},
    }


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, Fraction):
        from .exactmath import format_rational

        return format_rational(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v
