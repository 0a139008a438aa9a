"""Projective measurements that exclude states: WA / A / SA classification."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import StateVector, is_orthogonal
from .scenario import as_pool, generate_scenario


class PvmError(ValueError):
    pass


@dataclass(frozen=True)
class Pvm:
    """Measurement whose j-th element projects onto the span of ``elements[j]``."""

    dim: int
    elements: tuple[tuple[StateVector, ...], ...]

    def __init__(self, dim: int, elements):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "elements", tuple(tuple(e) for e in elements))

    @classmethod
    def rank1(cls, vectors: Sequence[StateVector]) -> "Pvm":
        return cls(vectors[0].dim, [(v,) for v in vectors])

    def vectors(self) -> list[StateVector]:
        return [v for e in self.elements for v in e]

    def __len__(self):
        return len(self.elements)


def validate_pvm(pvm: Pvm) -> bool:
    vs = pvm.vectors()
    if len(vs) != pvm.dim or any(not e for e in pvm.elements):
        return False
    if any(v.dim != pvm.dim for v in vs):
        return False
    return all(is_orthogonal(u, v) for u, v in itertools.combinations(vs, 2))


@dataclass(frozen=True)
class ExclusionReport:
    excluded_by_outcome: tuple[frozenset[int], ...]
    exclusive_outcomes: tuple[frozenset[int], ...]


def excludes(element: Sequence[StateVector], rho: StateVector) -> bool:
    """Tr(pi rho) = 0, i.e. rho is orthogonal to the whole element."""
    return all(is_orthogonal(v, rho) for v in element)


def exclusion_report(pvm: Pvm, S: Sequence[StateVector]) -> ExclusionReport:
    S = list(S)
    for rho in S:
        if rho.dim != pvm.dim:
            raise PvmError(f"state {rho.id!r} has dim {rho.dim}, measurement has dim {pvm.dim}")
    by_outcome = tuple(
        frozenset(i for i, rho in enumerate(S) if excludes(e, rho)) for e in pvm.elements
    )
    exclusive = tuple(
        frozenset(j for j, ex in enumerate(by_outcome) if ex == {i}) for i in range(len(S))
    )
    return ExclusionReport(by_outcome, exclusive)


class Level(str, enum.Enum):
    NONE = "NONE"
    WA = "WA"
    SA = "SA"


@dataclass(frozen=True)
class AdClass:
    level: Level
    a_matchable: bool
    # outcome index -> state index it excludes, when a_matchable
    matching: dict[int, int] | None = None

    @property
    def is_wa(self) -> bool:
        return self.level is not Level.NONE

    @property
    def is_sa(self) -> bool:
        return self.level is Level.SA


def perfect_matching(edges: Sequence[frozenset[int]], n_right: int) -> dict[int, int] | None:
    """Left i -> right j covering every left vertex (augmenting paths), or None."""
    owner: list[int | None] = [None] * n_right

    def augment(i: int, seen: set[int]) -> bool:
        for j in sorted(edges[i]):
            if j in seen:
                continue
            seen.add(j)
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(len(edges)):
        if not augment(i, set()):
            return None
    return {i: j for j, i in enumerate(owner) if i is not None}


def classify(pvm: Pvm, S: Sequence[StateVector]) -> AdClass:
    if not validate_pvm(pvm):
        raise PvmError("not a valid PVM")
    S = list(S)
    rep = exclusion_report(pvm, S)
    if not all(rep.excluded_by_outcome):
        return AdClass(Level.NONE, False)
    level = Level.SA if all(rep.exclusive_outcomes) else Level.WA
    matching = None
    if len(pvm.elements) == len(S):
        matching = perfect_matching(rep.excluded_by_outcome, len(S))
    return AdClass(level, matching is not None, matching)


def coarse_grain_sa_to_a(pvm: Pvm, S: Sequence[StateVector]) -> Pvm:
    """Merge outcomes so outcome i excludes state i.

    Each element goes to the smallest-index state it excludes.
    """
    S = list(S)
    if not classify(pvm, S).is_sa:
        raise PvmError("coarse graining needs a strongly antidistinguishing PVM")
    rep = exclusion_report(pvm, S)
    groups: list[list[StateVector]] = [[] for _ in S]
    for e, ex in zip(pvm.elements, rep.excluded_by_outcome):
        groups[min(ex)].extend(e)
    return Pvm(pvm.dim, groups)


def find_wa_context(S, pool):
    """(generated scenario, context) for the first context avoiding S, else (scenario, None)."""
    S = list(as_pool(S))
    scenario = generate_scenario(S, pool)
    k = len(S)
    for c in scenario.contexts:
        if min(c) >= k:
            return scenario, c
    return scenario, None


def find_wa_pvm(S, pool) -> Pvm | None:
    """A context of the generated scenario disjoint from S, as a rank-1 PVM.

    Every vertex outside S in the generated scenario is orthogonal to some
    state, so such a context weakly antidistinguishes S.
    """
    scenario, c = find_wa_context(S, pool)
    if c is None:
        return None
    return Pvm.rank1([scenario.vertices[i] for i in c])


def triple_criterion(d1, d2, d3) -> bool:
    """Antidistinguishability test for three pure states from their pairwise overlaps."""
    for d in (d1, d2, d3):
        if not 0 <= d <= 1:
            raise ValueError(f"overlap {d} outside [0, 1]")
    s = Fraction(d1) + Fraction(d2) + Fraction(d3) if _all_exact(d1, d2, d3) else d1 + d2 + d3
    return s < 1 and (s - 1) ** 2 >= 4 * d1 * d2 * d3


def _all_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)
