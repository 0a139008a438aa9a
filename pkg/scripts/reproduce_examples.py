"""Recompute the headline facts for the four bundled vector sets and print them as JSON."""

import argparse
import itertools
import json
import time

from ksadist import (
    classify,
    find_generating_subsets,
    find_wa_pvm,
    is_maximally_contextual,
    is_scenario_contextual,
    ks_color,
    load_dataset,
    theorem1_roundtrip,
)
from ksadist.analysis import pairwise_overlaps


def cabello():
    ds = load_dataset("cabello18")
    sc = ds.scenario
    ann = ds.annotations["partial_generator"]
    S = ds.pool.by_ids(ann["states"] + [ann["missing"]])
    v = is_maximally_contextual(S, ds.pool)
    return {
        "contexts": len(sc.contexts),
        "degrees": sorted({sc.degree(i) for i in range(len(sc.vertices))}),
        "contextual": is_scenario_contextual(sc),
        "generating_sets_by_size": {
            k: len([g for g in find_generating_subsets(sc, 4) if len(g) == k]) for k in (3, 4)
        },
        "partial_generator_plus_missing": {"status": v.status.value, "maximal": v.maximal},
    }


def yuoh():
    ds = load_dataset("yuoh13")
    S = ds.states
    pvm = find_wa_pvm(S, ds.pool)
    return {
        "colourable": ks_color(ds.scenario) is not None,
        "overlaps": [str(d) for d in pairwise_overlaps(S)],
        "wa_context": [v.id for v in pvm.vectors()],
        "class": classify(pvm, S).level.value,
        "maximal": is_maximally_contextual(S, ds.pool).maximal,
        "roundtrip_consistent": theorem1_roundtrip(S, ds.pool).consistent,
    }


def lisonek():
    ds = load_dataset("lisonek21")
    sc = ds.scenario
    triples = find_generating_subsets(sc, 3)
    maximal = sum(
        is_maximally_contextual([sc.vertices[i] for i in t], ds.pool).maximal is True for t in triples
    )
    return {
        "contexts": len(sc.contexts),
        "contextual": is_scenario_contextual(sc),
        "generating_pairs": len(find_generating_subsets(sc, 2)),
        "generating_triples": len(triples),
        "maximal_triples": maximal,
    }


def pbr():
    ds = load_dataset("pbr")
    S = ds.states
    cls = classify(ds.pvm, S)
    return {
        "class": cls.level.value,
        "matching": cls.matching,
        "triple_overlap_sums": [str(sum(pairwise_overlaps(t))) for t in itertools.combinations(S, 3)],
        "maximal": is_maximally_contextual(S, ds.pool).maximal,
        "roundtrip_consistent": theorem1_roundtrip(S, ds.pool).consistent,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", choices=["cabello18", "yuoh13", "lisonek21", "pbr"])
    args = ap.parse_args()
    runs = {"cabello18": cabello, "yuoh13": yuoh, "lisonek21": lisonek, "pbr": pbr}
    out = {}
    for name, fn in runs.items():
        if args.only and name != args.only:
            continue
        t0 = time.perf_counter()
        out[name] = fn()
        out[name]["seconds"] = round(time.perf_counter() - t0, 3)
    print(json.dumps(out, indent=2, default=str))


if __name__ == "__main__":
    main()
