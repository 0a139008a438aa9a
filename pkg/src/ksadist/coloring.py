"""KS colouring: 0/1 value assignments with exactly one 1 per context.

Besides the per-context sums, every orthogonal pair of vertices is barred from
both taking value 1, whether or not the pair shares a context.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scenario import Scenario, ScenarioError, check_non_orthogonal, is_generated_by

Assignment = dict[int, int]


class _Conflict(Exception):
    pass


class _Search:
    def __init__(self, scenario: Scenario):
        self.n = len(scenario.vertices)
        self.adj = scenario.adjacency
        self.contexts = scenario.contexts
        self.by_vertex: list[list[int]] = [[] for _ in range(self.n)]
        for k, c in enumerate(self.contexts):
            for v in c:
                self.by_vertex[v].append(k)

    def assign(self, values: list, v: int, x: int, trail: list[int]) -> None:
        """Set v := x and propagate to a fixpoint; raise _Conflict on contradiction."""
        queue = [(v, x)]
        while queue:
            v, x = queue.pop()
            if values[v] is not None:
                if values[v] != x:
                    raise _Conflict
                continue
            values[v] = x
            trail.append(v)
            if x == 1:
                for u in self.adj[v]:
                    queue.append((u, 0))
            for k in self.by_vertex[v]:
                ones = 0
                free = []
                for u in self.contexts[k]:
                    if values[u] == 1:
                        ones += 1
                    elif values[u] is None:
                        free.append(u)
                if ones > 1:
                    raise _Conflict
                if ones == 0:
                    if not free:
                        raise _Conflict
                    if len(free) == 1:
                        queue.append((free[0], 1))
                else:
                    for u in free:
                        queue.append((u, 0))

    def solve(self, forced: Mapping[int, int]) -> Assignment | None:
        values: list = [None] * self.n
        trail: list[int] = []
        try:
            for v in sorted(forced):
                self.assign(values, v, forced[v], trail)
        except _Conflict:
            return None
        if self._branch(values):
            return {i: values[i] for i in range(self.n)}
        return None

    def _branch(self, values: list) -> bool:
        v = next((i for i in range(self.n) if values[i] is None), None)
        if v is None:
            return True
        for x in (1, 0):
            trail: list[int] = []
            try:
                self.assign(values, v, x, trail)
                if self._branch(values):
                    return True
            except _Conflict:
                pass
            for u in trail:
                values[u] = None
        return False


def ks_color(scenario: Scenario, forced: Mapping[int, int] | None = None) -> Assignment | None:
    """First KS colouring extending ``forced``, or None when none exists.

    Vertices are branched in index order, trying 1 before 0, so the witness is
    deterministic.
    """
    forced = dict(forced or {})
    n = len(scenario.vertices)
    for v, x in forced.items():
        if not isinstance(v, int) or v < 0 or v >= n:
            raise ScenarioError(f"invalid vertex index {v!r}")
        if x not in (0, 1):
            raise ScenarioError(f"forced value must be 0 or 1, got {x!r}")
    return _Search(scenario).solve(forced)


def is_valid_coloring(scenario: Scenario, nu: Mapping[int, int]) -> bool:
    if set(nu) != set(range(len(scenario.vertices))) or any(x not in (0, 1) for x in nu.values()):
        return False
    if any(sum(nu[v] for v in c) != 1 for c in scenario.contexts):
        return False
    return not any(
        nu[i] and nu[j] for i, nb in enumerate(scenario.adjacency) for j in nb if i < j
    )


def is_scenario_contextual(scenario: Scenario) -> bool:
    return ks_color(scenario) is None


def is_contextual_instance(S: Iterable[int], scenario: Scenario) -> bool:
    """True when no colouring gives every member of S the value 1."""
    S = list(S)
    if not is_generated_by(scenario, S):
        raise ScenarioError("scenario is not generated by the given set")
    check_non_orthogonal([scenario.vertices[i] for i in S])
    return ks_color(scenario, {i: 1 for i in S}) is None
