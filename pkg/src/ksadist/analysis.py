"""Set-level verdicts: contextuality, maximal contextuality, and the WA round trip."""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .algebra import StateVector, fine_grain, overlap
from .antidist import Pvm, classify, excludes, find_wa_context, triple_criterion
from .coloring import is_contextual_instance, ks_color
from .scenario import (
    Pool,
    Scenario,
    ScenarioError,
    as_pool,
    check_non_orthogonal,
    closure,
    enumerate_contexts,
    generate_scenario,
    is_generated_by,
)


class Status(str, enum.Enum):
    CONTEXTUAL = "CONTEXTUAL"
    NOT_CONTEXTUAL = "NOT_CONTEXTUAL"
    UNKNOWN = "UNKNOWN"


@dataclass
class ContextualityVerdict:
    status: Status
    method: str
    witness: dict[str, Any] | None = None
    # only set by is_maximally_contextual; None means undecided
    maximal: bool | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status.value, "method": self.method}
        if self.maximal is not None or self.method.startswith("maximal"):
            out["maximal"] = self.maximal
        out["witness"] = _jsonable(self.witness) if self.witness else {}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _jsonable(x):
    if isinstance(x, StateVector):
        return x.id
    if isinstance(x, Pvm):
        return [[v.id for v in e] for e in x.elements]
    if isinstance(x, Scenario):
        return {
            "vertices": [v.id for v in x.vertices],
            "contexts": [[x.vertices[i].id for i in c] for c in x.contexts],
        }
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, ContextualityVerdict):
        return x.to_dict()
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _states(S) -> list[StateVector]:
    S = list(Pool(S).vectors)
    if not S:
        raise ScenarioError("empty state set")
    check_non_orthogonal(S)
    return S


def pairwise_overlaps(S: Sequence[StateVector]):
    """(d12, d13, d23) in the order the three-state criterion expects."""
    a, b, c = S
    return overlap(a, b), overlap(a, c), overlap(b, c)


def _search_pool(S, pool, budget: int) -> Pool:
    base = as_pool(list(S) + (list(pool) if pool is not None else []))
    return closure(base, budget) if budget else base


def _wa_witness(S, pool) -> dict | None:
    scenario, ctx = find_wa_context(S, pool)
    if ctx is None:
        return None
    k = len(S)
    pvm = Pvm.rank1([scenario.vertices[i] for i in ctx])
    return {
        "pvm": pvm,
        "scenario": scenario,
        "instance_unsat": ks_color(scenario, {i: 1 for i in range(k)}) is None,
    }


def is_set_contextual(S, pool=None, budget: int = 0) -> ContextualityVerdict:
    """Decide contextuality of a non-orthogonal pure-state set.

    Sets of two are never contextual; sets of three are decided exactly by the
    three-state overlap criterion. Larger sets are searched for an excluding
    context within ``pool`` grown by ``budget`` closure rounds; failing to find
    one yields UNKNOWN, never NOT_CONTEXTUAL.
    """
    S = _states(S)
    if len(S) == 1:
        return ContextualityVerdict(
            Status.UNKNOWN,
            "single-state",
            notes=["contextuality of a single state is not decided here"],
        )
    if len(S) == 2:
        return ContextualityVerdict(Status.NOT_CONTEXTUAL, "pairwise-rule")
    search = _search_pool(S, pool, budget)
    if len(S) == 3:
        deltas = pairwise_overlaps(S)
        ok = triple_criterion(*deltas)
        witness: dict[str, Any] = {"overlaps": [str(d) for d in deltas], "criterion": ok}
        if not ok:
            return ContextualityVerdict(Status.NOT_CONTEXTUAL, "lemma3-lemma4", witness)
        wa = _wa_witness(S, search)
        method = "lemma3-lemma4"
        if wa is not None:
            witness.update(wa)
            method += "+wa-context"
        return ContextualityVerdict(
            Status.CONTEXTUAL,
            method,
            witness,
            notes=["a true overlap criterion certifies antidistinguishability possibly by a non-projective measurement"]
            if wa is None
            else [],
        )
    wa = _wa_witness(S, search)
    if wa is not None:
        return ContextualityVerdict(Status.CONTEXTUAL, "wa-context", wa)
    return ContextualityVerdict(
        Status.UNKNOWN,
        "pool-exhausted",
        notes=[f"no excluding context among {len(search)} pool vectors"],
    )


def verify_witness(verdict: ContextualityVerdict, S) -> bool:
    """Independently re-check a CONTEXTUAL verdict's witness."""
    S = list(Pool(S).vectors)
    w = verdict.witness or {}
    if "pvm" in w:
        if not classify(w["pvm"], S).is_wa:
            return False
        sc = w["scenario"]
        k = len(S)
        return is_generated_by(sc, range(k)) and ks_color(sc, {i: 1 for i in range(k)}) is None
    if "overlaps" in w and len(S) == 3:
        return triple_criterion(*pairwise_overlaps(S)) is True
    return False


def _subset_verdict(args):
    sub, pool, budget = args
    return is_set_contextual(sub, pool, budget)


def is_maximally_contextual(S, pool=None, budget: int = 0, jobs: int = 1) -> ContextualityVerdict:
    """Contextual, with no contextual proper subset.

    The returned verdict carries the set's own status and ``maximal``:
    True/False when decided, None when some needed check came back UNKNOWN.
    """
    S = _states(S)
    own = is_set_contextual(S, pool, budget)
    if own.status is not Status.CONTEXTUAL:
        own.maximal = False if own.status is Status.NOT_CONTEXTUAL else None
        own.method = f"maximal/{own.method}"
        return own
    subsets = [
        list(c) for r in range(3, len(S)) for c in itertools.combinations(S, r)
    ]
    work = [(sub, pool, budget) for sub in subsets]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            verdicts = list(ex.map(_subset_verdict, work))
    else:
        verdicts = [_subset_verdict(w) for w in work]
    contextual = [(sub, v) for sub, v in zip(subsets, verdicts) if v.status is Status.CONTEXTUAL]
    unknown = [sub for sub, v in zip(subsets, verdicts) if v.status is Status.UNKNOWN]
    witness = dict(own.witness or {})
    notes = ["maximality read as: the set is contextual and no proper subset is"]
    if contextual:
        sub, v = contextual[0]
        witness["contextual_subset"] = [s.id for s in sub]
        witness["subset_verdict"] = v
        maximal: bool | None = False
    elif unknown:
        witness["undecided_subsets"] = [[s.id for s in sub] for sub in unknown]
        maximal = None
    else:
        maximal = True
    exact = all(len(sub) == 3 for sub in subsets)
    method = "maximal/" + own.method + ("/exact-subsets" if exact else "/pool-subsets")
    return ContextualityVerdict(own.status, method, witness, maximal, notes)


def wa_pvms_in_pool(S, pool) -> list[Pvm]:
    """Every excluding context of the scenario S generates within ``pool``."""
    S = _states(S)
    scenario = generate_scenario(S, pool)
    k = len(S)
    return [
        Pvm.rank1([scenario.vertices[i] for i in c]) for c in scenario.contexts if min(c) >= k
    ]


def _basis_completion(pi: StateVector, rho: StateVector) -> list[StateVector]:
    """Orthogonal basis whose first two members are pi and rho."""
    d = pi.dim
    zero = pi.entries[0] * 0
    one = zero + 1
    units = [
        StateVector(f"{pi.id}|e{j}", [one if k == j else zero for k in range(d)]) for j in range(d)
    ]
    out = fine_grain([pi, rho] + units)
    return [v if k < 2 else v.relabel(f"{pi.id}/{rho.id}#{k}") for k, v in enumerate(out)]


def contextual_scenario_from_pvm(pvm: Pvm, S) -> Scenario:
    """Scenario generated by S in which S is a contextual instance, built from a WA measurement.

    The measurement is fine-grained to rank 1; each rank-1 outcome is put in a
    context with a state it excludes. S occupies vertex indices 0..len(S)-1.
    """
    S = _states(S)
    rank1: list[StateVector] = []
    for e in pvm.elements:
        if not any(excludes(e, rho) for rho in S):
            raise ScenarioError("measurement is not weakly antidistinguishing")
        rank1.extend(fine_grain(list(e)))
    vertices = list(S) + rank1
    for pi in rank1:
        rho = next(r for r in S if excludes([pi], r))
        vertices.extend(_basis_completion(pi, rho))
    return enumerate_contexts(Pool(vertices, strict=False))


@dataclass
class RoundTrip:
    contextual_instance: bool
    extracted_context: tuple[str, ...] | None
    direction_a: bool | None
    wa_pvm: Pvm | None
    direction_b: bool | None

    @property
    def consistent(self) -> bool:
        if self.contextual_instance != (self.wa_pvm is not None):
            return False
        if self.contextual_instance:
            return self.direction_a is True and self.direction_b is True
        return self.direction_a is None and self.direction_b is None

    def to_dict(self) -> dict:
        return {
            "contextual_instance": self.contextual_instance,
            "extracted_context": list(self.extracted_context) if self.extracted_context else None,
            "direction_a": self.direction_a,
            "wa_pvm": _jsonable(self.wa_pvm),
            "direction_b": self.direction_b,
            "consistent": self.consistent,
        }


def theorem1_roundtrip(S, pool) -> RoundTrip:
    """Contextual instance -> excluding context, and WA measurement -> contextual scenario."""
    S = _states(S)
    k = len(S)
    scenario = generate_scenario(S, pool)
    instance = is_contextual_instance(range(k), scenario)
    extracted = a_ok = None
    if instance:
        # forcing S to 1 forces every implied vertex to 0
        nu = {i: int(i < k) for i in range(len(scenario.vertices))}
        ctx = next(c for c in scenario.contexts if sum(nu[i] for i in c) == 0)
        extracted = tuple(scenario.vertices[i].id for i in ctx)
        a_ok = classify(Pvm.rank1([scenario.vertices[i] for i in ctx]), S).is_wa
    scenario_b, ctx_b = find_wa_context(S, pool)
    wa = Pvm.rank1([scenario_b.vertices[i] for i in ctx_b]) if ctx_b is not None else None
    b_ok = None
    if wa is not None:
        built = contextual_scenario_from_pvm(wa, S)
        b_ok = is_generated_by(built, range(k)) and is_contextual_instance(range(k), built)
    return RoundTrip(instance, extracted, a_ok, wa, b_ok)


def _independent_sets(adj, n: int, size: int) -> Iterable[tuple[int, ...]]:
    def grow(chosen: list[int], start: int):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for v in range(start, n):
            if not any(v in adj[u] for u in chosen):
                yield from grow(chosen + [v], v + 1)

    yield from grow([], 0)


def find_generating_subsets(scenario: Scenario, max_size: int) -> list[tuple[int, ...]]:
    """Pairwise non-orthogonal vertex sets that imply every other vertex."""
    adj = scenario.adjacency
    n = len(scenario.vertices)
    everything = set(range(n))
    out = []
    for size in range(1, max_size + 1):
        for sub in _independent_sets(adj, n, size):
            covered = set(sub).union(*(adj[i] for i in sub))
            if covered == everything:
                out.append(sub)
    return out


@dataclass
class ConjectureFinding:
    states: tuple[str, ...]
    pvm: Pvm
    verdict: ContextualityVerdict


def search_sa_not_maximal(
    pool, sizes: Sequence[int] = (3, 4), budget: int = 0
) -> list[ConjectureFinding]:
    """Sets with a strongly antidistinguishing context that are not maximally contextual."""
    pool = as_pool(pool)
    adj = enumerate_contexts(pool).adjacency
    found = []
    for size in sizes:
        for sub in _independent_sets(adj, len(pool), size):
            S = [pool[i] for i in sub]
            pvm = next((p for p in wa_pvms_in_pool(S, pool) if classify(p, S).is_sa), None)
            if pvm is None:
                continue
            v = is_maximally_contextual(S, pool, budget)
            if v.maximal is False:
                found.append(ConjectureFinding(tuple(s.id for s in S), pvm, v))
    return found
