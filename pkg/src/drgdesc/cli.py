"""Command line interface.

Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
3 vertex budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import leonard as L
from . import qmatroid as QM
from . import subsets as SB
from .exactmath import format_rational
from .graphs import FAMILIES, BudgetExceeded, Graph, NotDistanceRegular, build, current_budget, make_drg
from .scheme import check_scheme_axioms, scheme_to_json
from .verify import classical_json, qmatroid_json, verify_all

SCHEMA = "drgdesc/1"
# families whose descendents are classified but which have no constructor here
NOT_CONSTRUCTED = (
    "dual_polar", "hemmeter", "hermitean_forms", "alternating_forms", "quadratic_forms",
    "half_dual_polar", "ustimenko", "folded_cube", "twisted_grassmann",
)
EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------


def parse_params(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"parameters must be comma-separated integers, got {text!r}")


def _graph_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=sorted(FAMILIES) + list(NOT_CONSTRUCTED))
    p.add_argument("--params", help='comma-separated parameters, e.g. "3,2"')
    p.add_argument("--graph-json", help="read a graph {n, labels, edges} from this file")
    p.add_argument("--budget", type=int, default=None, help="maximum number of vertices")


def _run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("auto", "exhaustive", "known", "search"), default="auto")
    p.add_argument("--search-budget", type=int, default=SB.SEARCH_BUDGET, help="closure operations for search mode")
    p.add_argument("--workers", type=int, default=1)


def _output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drgdesc", description="Descendents of Q-polynomial distance-regular graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph and print it")
    _graph_options(p)
    _output_options(p)

    p = sub.add_parser("analyze", help="eigenvalues, Q-polynomial orderings, classical parameters and fitted array")
    _graph_options(p)
    _output_options(p)

    p = sub.add_parser("descendents", help="enumerate descendents")
    _graph_options(p)
    _run_options(p)
    _output_options(p)

    p = sub.add_parser("leonard", help="parameter array tools")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("fit", help="fit a parameter array to a graph")
    _graph_options(q)
    _output_options(q)
    q = lsub.add_parser("expand", help="expand a parameter array")
    q.add_argument("--in", dest="infile", required=True)
    _output_options(q)
    q = lsub.add_parser("descend", help="the rho-descendent of a parameter array")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--dprime", type=int, required=True)
    q.add_argument("--rho", type=int, default=0)
    _output_options(q)

    p = sub.add_parser("qmatroid", help="quantum-matroid checks on the descendent poset")
    _graph_options(p)
    _run_options(p)
    p.add_argument("--form", help="restrict to one known-form tag, e.g. johnson-i")
    _output_options(p)

    p = sub.add_parser("verify-all", help="run every check and report")
    _graph_options(p)
    _run_options(p)
    p.add_argument("--form", help="restrict the family to one known-form tag")
    _output_options(p)
    return parser


def load_graph(args):
    budget = args.budget if args.budget is not None else current_budget()
    if args.graph_json:
        if args.family:
            raise ConfigError("give either --family or --graph-json, not both")
        try:
            with open(args.graph_json) as fh:
                obj = json.load(fh)
            graph = Graph.from_json(obj.get("graph", obj))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read graph: {exc}")
        if graph.n > budget:
            raise BudgetExceeded(f"{graph.n} vertices exceeds the size budget {budget}")
        return make_drg(graph)
    if args.family in NOT_CONSTRUCTED:
        raise ConfigError(f"{args.family}: classification known, not constructed")
    if not args.family or args.params is None:
        raise ConfigError("need --family and --params, or --graph-json")
    try:
        return build(args.family, parse_params(args.params), budget=budget)
    except BudgetExceeded:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc))


def _read_array(path: str) -> L.ParameterArray:
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return L.ParameterArray.from_json(obj.get("array", obj))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read parameter array: {exc}")


# --------------------------------------------------------------------------
# payloads
# --------------------------------------------------------------------------


def graph_header(G) -> dict:
    return {
        "name": G.name,
        "family": G.family,
        "params": list(G.params),
        "n": G.n,
        "d": G.d,
        "intersection_array": [list(G.b[:-1]), list(G.c[1:])],
    }


def record_json(G, r: SB.DescendentRecord) -> dict:
    p = r.profile
    return {
        "vertices": [G.labels[v] for v in r.Y],
        "size": len(r.Y),
        "w": r.w,
        "w_star": r.w_star,
        "rho": p.rho,
        "convex": p.is_convex,
        "completely_regular": p.is_completely_regular,
        "strongly_closed": p.is_strongly_closed,
        "induced_connected": r.induced_connected,
        "induced_array": (
            [list(r.induced_ia[0][:-1]), list(r.induced_ia[1][1:])] if r.induced_ia else None
        ),
        "generator": r.generator,
    }


def cmd_construct(args):
    G = load_graph(args)
    out = {"graph": G.graph.to_json(), **graph_header(G)}
    return out, EXIT_OK


def cmd_analyze(args):
    G = load_graph(args)
    A = SB.analyze(G)
    problems = check_scheme_axioms(A.S)
    out = {
        **graph_header(G),
        "scheme": scheme_to_json(A.S),
        "ordering": list(A.ordering.perm),
        "classical": classical_json(A.classical),
        "array": A.array.to_json() if A.array else None,
        "scheme_problems": [str(x) for x in problems],
    }
    return out, (EXIT_CHECK if problems else EXIT_OK)


def cmd_descendents(args):
    G = load_graph(args)
    A = SB.analyze(G)
    recs, mode, complete = _enumerate(A, args)
    out = {
        **graph_header(G),
        "mode": mode,
        "complete": complete,
        "count": len(recs),
        "descendents": [record_json(G, r) for r in recs],
    }
    return out, EXIT_OK


def _enumerate(A, args):
    if getattr(args, "form", None):
        args.mode = "known"  # form tags only exist on known-form records
    try:
        return SB.enumerate_descendents(A, args.mode, args.search_budget, args.workers)
    except ValueError as exc:
        raise ConfigError(str(exc))


def cmd_leonard(args):
    if args.action == "fit":
        G = load_graph(args)
        A = SB.analyze(G)
        if A.array is None:
            return {**graph_header(G), "array": None, "error": "no case fits"}, EXIT_CHECK
        ea = L.expand(A.array)
        return {**graph_header(G), "array": A.array.to_json(), "expanded": ea.to_json()}, EXIT_OK
    pa = _read_array(args.infile)
    try:
        if args.action == "expand":
            ea = L.expand(pa)
            b, c = L.normalized_numbers(ea)
            return {
                "array": pa.to_json(),
                "expanded": ea.to_json(),
                "b": [format_rational(x) for x in b],
                "c": [format_rational(x) for x in c],
                "classical": classical_json(L.classical_from_case(pa)),
            }, EXIT_OK
        if not 1 <= args.dprime <= pa.d:
            raise ConfigError(f"--dprime must lie in 1..{pa.d}")
        child = L.rho_descendent(pa, args.dprime, args.rho)
    except L.InfeasibleArray as exc:
        return {"array": pa.to_json(), "error": f"infeasible: {exc}"}, EXIT_CHECK
    except L.NoSuchDescendent as exc:
        return {"array": pa.to_json(), "error": f"no descendent: {exc}"}, EXIT_CHECK
    return {"array": pa.to_json(), "dprime": args.dprime, "rho": args.rho, "descendent": child.to_json()}, EXIT_OK


def cmd_qmatroid(args):
    G = load_graph(args)
    A = SB.analyze(G)
    recs, mode, complete = _enumerate(A, args)
    if args.form:
        recs = [r for r in recs if r.generator == f"known-form:{args.form}"]
        if not recs:
            raise ConfigError(f"no descendents with form {args.form!r}")
    q = A.classical.q if A.classical else None
    rep = QM.full_report(G, recs, q)
    out = {**graph_header(G), "mode": mode, "form": args.form, "members": len(recs), "report": qmatroid_json(rep, G.d)}
    return out, EXIT_OK


def cmd_verify_all(args):
    G = load_graph(args)
    if args.mode == "known" and G.family is None:
        raise ConfigError("known-form enumeration needs a named family")
    if args.form:
        args.mode = "known"
    rep = verify_all(G, args.mode, args.search_budget, args.workers, form=args.form)
    checks = []
    for c in rep.checks:
        item = {"name": c.name, "anchor": c.anchor, "status": c.status, "witness": _jsonable(c.witness)}
        if c.detail is not None:
            item["detail"] = _jsonable(c.detail)
        if args.timings:
            item["seconds"] = round(c.seconds, 3)
        checks.append(item)
    out = {
        **graph_header(G),
        "ok": rep.ok,
        "mode": rep.enumeration_mode,
        "complete": rep.complete,
        "checks": checks,
    }
    return out, (EXIT_OK if rep.ok else EXIT_CHECK)


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    try:
        return format_rational(v)
    except (TypeError, ValueError):
        return str(v)


COMMANDS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "descendents": cmd_descendents,
    "leonard": cmd_leonard,
    "qmatroid": cmd_qmatroid,
    "verify-all": cmd_verify_all,
}


# --------------------------------------------------------------------------
# text rendering
# --------------------------------------------------------------------------


def render_text(command: str, out: dict) -> str:
    lines = []
    if "name" in out:
        ia = out["intersection_array"]
        lines.append(f"{out['name']}  n={out['n']} d={out['d']}  {{{','.join(map(str, ia[0]))}; {','.join(map(str, ia[1]))}}}")
    if command == "verify-all":
        for c in out["checks"]:
            t = f"  {c['seconds']:.3f}s" if "seconds" in c else ""
            lines.append(f"{c['status'].upper():7} {c['name']}{t}")
            if c["witness"] is not None:
                lines.append(f"        witness: {json.dumps(c['witness'])}")
        lines.append("OK" if out["ok"] else "FAILED")
    elif command == "descendents":
        lines.append(f"mode={out['mode']} complete={out['complete']} count={out['count']}")
        lines.append(f"{'w':>3} {'w*':>3} {'|Y|':>6} {'conv':>5} {'CR':>5} {'conn':>5}  generator")
        for r in out["descendents"]:
            lines.append(
                f"{r['w']:>3} {r['w_star']:>3} {r['size']:>6} {str(r['convex'])[0]:>5} "
                f"{str(r['completely_regular'])[0]:>5} {str(r['induced_connected'])[0]:>5}  {r['generator']}"
            )
    else:
        body = {k: v for k, v in out.items() if k not in ("name", "n", "d", "intersection_array", "family", "params")}
        for k, v in body.items():
            lines.append(f"{k}: {json.dumps(v)}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        out, code = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"drgdesc: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"drgdesc: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotDistanceRegular as exc:
        print(f"drgdesc: not distance-regular: {exc} (witness {exc.witness})", file=sys.stderr)
        return EXIT_CHECK
    out = {"schema": SCHEMA, "command": args.command, **out}
    if args.timings:
        out["seconds"] = round(time.perf_counter() - t0, 3)
    text = json.dumps(out, indent=2) + "\n" if args.format == "json" else render_text(args.command, out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
