"""Command-line front end.

Exit codes: 0 the queried property holds (SAT, contextual, maximal, ...),
1 it fails, 2 undecided (UNKNOWN), 3 input error. JSON goes to stdout (or
``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, antidist, coloring, datasets, io
from .algebra import AlgebraError, Approx, StateVector
from .scenario import Pool, Scenario, ScenarioError, enumerate_contexts, generate_scenario

OK, FAIL, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_source(src: str) -> tuple[str, dict]:
    if src.startswith("dataset:"):
        name = src.split(":", 1)[1]
        try:
            text = datasets.raw_json(name)
        except datasets.DatasetError as e:
            raise InputError(str(e)) from None
    else:
        try:
            text = Path(src).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {src}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{src}: invalid JSON: {e}") from None
    return text, data


def _to_backend(vs, backend: str | None) -> list[StateVector]:
    vs = list(vs)
    if backend is None or not vs:
        return vs
    exact = vs[0].exact
    if backend == "exact" and not exact:
        raise InputError("float input cannot be used with --backend exact")
    if backend == "float" and exact:
        return [StateVector(v.id, [Approx(e.to_complex()) for e in v.entries]) for v in vs]
    return vs


def load_scenario(src: str, backend: str | None = None) -> Scenario:
    _, data = _read_source(src)
    sc = io.parse_stateset(data)
    if backend == "float" and sc.vertices[0].exact:
        return enumerate_contexts(Pool(_to_backend(sc.vertices, backend)))
    _to_backend(sc.vertices, backend)
    return sc


def load_pool(src: str, backend: str | None = None) -> tuple[Pool, dict]:
    _, data = _read_source(src)
    pool = io.parse_pool(data)
    return Pool(_to_backend(pool.vectors, backend)), data


def _states(args, pool: Pool, data: dict) -> list[StateVector]:
    if args.states:
        ids = [s for s in args.states.split(",") if s]
    else:
        ids = data.get("annotations", {}).get("states")
        if not ids:
            raise InputError("--states is required for this pool")
    return pool.by_ids(ids)


def _emit(args, payload) -> None:
    text = io.dumps(payload) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_color(args) -> int:
    sc = load_scenario(args.scenario, args.backend)
    forced = {}
    for item in args.force or []:
        id, _, val = item.partition("=")
        if val not in ("0", "1"):
            raise InputError(f"--force expects id=0 or id=1, got {item!r}")
        forced[sc.index(id)] = int(val)
    nu = coloring.ks_color(sc, forced)
    _emit(args, io.assignment_to_dict(sc, nu))
    return OK if nu is not None else FAIL


def cmd_instance(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    sc = generate_scenario(S, pool)
    hit = coloring.is_contextual_instance(range(len(S)), sc)
    _emit(args, {"contextual_instance": hit, "scenario": io.scenario_to_dict(sc)})
    return OK if hit else FAIL


def _exclusion_dict(rep, pvm, S) -> dict:
    return {
        "excluded_by_outcome": [sorted(S[i].id for i in ex) for ex in rep.excluded_by_outcome],
        "exclusive_outcomes": {S[i].id: sorted(js) for i, js in enumerate(rep.exclusive_outcomes)},
    }


def cmd_classify_pvm(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    if args.pvm:
        _, pdata = _read_source(args.pvm)
        pvm = io.parse_pvm(pdata, pool)
    else:
        pvm = datasets_pvm(data, pool)
    if not antidist.validate_pvm(pvm):
        raise InputError("measurement is not a valid PVM")
    cls = antidist.classify(pvm, S)
    rep = antidist.exclusion_report(pvm, S)
    out = {
        "class": cls.level.value,
        "a_matchable": cls.a_matchable,
        "matching": {str(j): S[i].id for j, i in (cls.matching or {}).items()},
        "exclusion": _exclusion_dict(rep, pvm, S),
    }
    if cls.is_sa:
        out["coarse_grained"] = io.pvm_to_dict(antidist.coarse_grain_sa_to_a(pvm, S))
    _emit(args, out)
    return OK if cls.is_wa else FAIL


def datasets_pvm(data: dict, pool: Pool):
    els = data.get("annotations", {}).get("pvm")
    if not els:
        raise InputError("--pvm is required for this pool")
    return antidist.Pvm(pool.dim, [pool.by_ids(e) for e in els])


def cmd_wa_search(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    pvm = antidist.find_wa_pvm(S, pool)
    out: dict = {"found": pvm is not None}
    if pvm is not None:
        cls = antidist.classify(pvm, S)
        out.update({"pvm": io.pvm_to_dict(pvm), "class": cls.level.value, "a_matchable": cls.a_matchable})
    _emit(args, out)
    return OK if pvm is not None else FAIL


def _verdict_code(status: analysis.Status) -> int:
    return {analysis.Status.CONTEXTUAL: OK, analysis.Status.NOT_CONTEXTUAL: FAIL}.get(status, UNKNOWN)


def cmd_contextual(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    v = analysis.is_set_contextual(S, pool, args.closure_rounds)
    _emit(args, v.to_dict())
    return _verdict_code(v.status)


def cmd_maximal(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    v = analysis.is_maximally_contextual(S, pool, args.closure_rounds, jobs=args.jobs)
    _emit(args, v.to_dict())
    return {True: OK, False: FAIL, None: UNKNOWN}[v.maximal]


def cmd_roundtrip(args) -> int:
    pool, data = load_pool(args.pool, args.backend)
    S = _states(args, pool, data)
    rt = analysis.theorem1_roundtrip(S, pool)
    _emit(args, rt.to_dict())
    return OK if rt.consistent else FAIL


def cmd_triple(args) -> int:
    if args.overlaps:
        from fractions import Fraction

        try:
            deltas = [Fraction(x) for x in args.overlaps.split(",")]
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad --overlaps {args.overlaps!r}") from None
        if len(deltas) != 3:
            raise InputError("--overlaps needs exactly three values")
    else:
        if not args.pool:
            raise InputError("give --overlaps or --pool with three --states")
        pool, data = load_pool(args.pool, args.backend)
        S = _states(args, pool, data)
        if len(S) != 3:
            raise InputError("exactly three states are needed")
        deltas = list(analysis.pairwise_overlaps(S))
    try:
        ok = antidist.triple_criterion(*deltas)
    except ValueError as e:
        raise InputError(str(e)) from None
    s = sum(deltas)
    _emit(
        args,
        {
            "overlaps": [str(d) for d in deltas],
            "sum_below_one": bool(s < 1),
            "product_condition": bool((s - 1) ** 2 >= 4 * deltas[0] * deltas[1] * deltas[2]),
            "antidistinguishable": ok,
        },
    )
    return OK if ok else FAIL


def cmd_generators(args) -> int:
    sc = load_scenario(args.scenario, args.backend)
    subs = analysis.find_generating_subsets(sc, args.max_size)
    _emit(args, {"max_size": args.max_size, "generating_sets": [[sc.vertices[i].id for i in s] for s in subs]})
    return OK if subs else FAIL


def cmd_conjecture_search(args) -> int:
    pool, _ = load_pool(args.pool, args.backend)
    sizes = [int(x) for x in args.sizes.split(",")]
    found = analysis.search_sa_not_maximal(pool, sizes, args.closure_rounds)
    _emit(
        args,
        {
            "sizes": sizes,
            "counterexamples": [
                {"states": list(f.states), "pvm": [[v.id for v in e] for e in f.pvm.elements], "verdict": f.verdict.to_dict()}
                for f in found
            ],
        },
    )
    return FAIL if found else OK


def cmd_datasets(args) -> int:
    if args.action == "list":
        out = []
        for name in datasets.NAMES:
            ds = datasets.load_dataset(name)
            out.append({"name": name, "dimension": ds.dimension, "vectors": len(ds.pool), "contexts": len(ds.scenario.contexts), "description": ds.description})
        _emit(args, out)
        return OK
    if not args.name:
        raise InputError("datasets show needs a name")
    try:
        text = datasets.raw_json(args.name)
    except datasets.DatasetError as e:
        raise InputError(str(e)) from None
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def cmd_export_dot(args) -> int:
    sc = load_scenario(args.scenario, args.backend)
    dot = io.export_dot(sc)
    nodes = len(sc.vertices) + len(sc.contexts)
    edges = sum(len(c) for c in sc.contexts)
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
        sys.stdout.write(io.dumps({"out": args.out, "nodes": nodes, "edges": edges}) + "\n")
    else:
        sys.stdout.write(io.dumps({"nodes": nodes, "edges": edges, "dot": dot}) + "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ksadist", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["exact", "float"], default=None)
    common.add_argument("--out", help="write output here instead of stdout")
    setwise = argparse.ArgumentParser(add_help=False)
    setwise.add_argument("--pool", required=True, help="scenario JSON file or dataset:NAME")
    setwise.add_argument("--states", help="comma-separated vector ids (default: the pool's annotated states)")
    rounds = argparse.ArgumentParser(add_help=False)
    rounds.add_argument("--closure-rounds", type=int, default=0)

    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("color", parents=[common], help="KS colouring of a scenario")
    s.add_argument("scenario")
    s.add_argument("--force", action="append", metavar="ID=0|1")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("instance", parents=[common, setwise], help="contextual instance of the generated scenario")
    s.set_defaults(func=cmd_instance)

    s = sub.add_parser("classify-pvm", parents=[common, setwise], help="WA/SA classification of a measurement")
    s.add_argument("--pvm", help="PVM JSON file (default: the pool's annotated measurement)")
    s.set_defaults(func=cmd_classify_pvm)

    s = sub.add_parser("wa-search", parents=[common, setwise], help="search for an excluding context")
    s.set_defaults(func=cmd_wa_search)

    s = sub.add_parser("contextual", parents=[common, setwise, rounds], help="contextuality of a state set")
    s.set_defaults(func=cmd_contextual)

    s = sub.add_parser("maximal", parents=[common, setwise, rounds], help="maximal contextuality of a state set")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_maximal)

    s = sub.add_parser("roundtrip", parents=[common, setwise], help="both directions of the WA/contextuality equivalence")
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("triple", parents=[common], help="three-state antidistinguishability criterion")
    s.add_argument("--overlaps", help="three overlaps, e.g. 1/2,1/2,1/4")
    s.add_argument("--pool")
    s.add_argument("--states")
    s.set_defaults(func=cmd_triple)

    s = sub.add_parser("generators", parents=[common], help="generating subsets of a scenario")
    s.add_argument("scenario")
    s.add_argument("--max-size", type=int, default=3)
    s.set_defaults(func=cmd_generators)

    s = sub.add_parser("conjecture-search", parents=[common, rounds], help="look for SA sets that are not maximally contextual")
    s.add_argument("--pool", required=True)
    s.add_argument("--sizes", default="3,4")
    s.set_defaults(func=cmd_conjecture_search)

    s = sub.add_parser("datasets", parents=[common], help="list or show bundled datasets")
    s.add_argument("action", choices=["list", "show"])
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_datasets)

    s = sub.add_parser("export-dot", parents=[common], help="bipartite DOT rendering of a scenario")
    s.add_argument("scenario")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        return args.func(args)
    except (InputError, io.FormatError, ScenarioError, AlgebraError, antidist.PvmError) as e:
        print(f"ksadist: error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
