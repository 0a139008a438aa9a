"""Contextuality scenarios as hypergraphs over finite pools of rank-1 projectors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import (
    AlgebraError,
    DimensionMismatch,
    StateVector,
    canonicalize,
    is_orthogonal,
    orthogonal_completion,
)


class ScenarioError(ValueError):
    pass


class DuplicateProjector(ScenarioError):
    def __init__(self, ids: Sequence[str]):
        self.ids = tuple(ids)
        super().__init__(f"vectors {', '.join(map(repr, ids))} are the same projector")


def orthogonality_graph(vectors: Sequence[StateVector]) -> list[frozenset[int]]:
    """adjacency[i] = indices j with vectors[i] orthogonal to vectors[j]."""
    n = len(vectors)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if is_orthogonal(vectors[i], vectors[j]):
                adj[i].add(j)
                adj[j].add(i)
    return [frozenset(a) for a in adj]


@dataclass(frozen=True)
class Pool:
    """Ordered, duplicate-free collection of canonicalised vectors of one dimension."""

    vectors: tuple[StateVector, ...]

    def __init__(self, vectors: Iterable[StateVector] = (), strict: bool = True):
        out: list[StateVector] = []
        seen: dict[tuple, str] = {}
        for v in vectors:
            c = canonicalize(v)
            if out and c.dim != out[0].dim:
                raise DimensionMismatch(f"{v.id!r} has dim {c.dim}, pool has dim {out[0].dim}")
            key = _key(c)
            if key in seen:
                if strict:
                    raise DuplicateProjector([seen[key], v.id])
                continue
            if key is None and any(_same(c, o) for o in out):
                if strict:
                    dup = next(o for o in out if _same(c, o))
                    raise DuplicateProjector([dup.id, v.id])
                continue
            if key is not None:
                seen[key] = v.id
            out.append(c)
        object.__setattr__(self, "vectors", tuple(out))

    @property
    def dim(self) -> int:
        if not self.vectors:
            raise ScenarioError("empty pool has no dimension")
        return self.vectors[0].dim

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    @cached_property
    def ids(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vectors)}

    def index_of(self, v: StateVector) -> int | None:
        c = canonicalize(v)
        for i, w in enumerate(self.vectors):
            if _same(c, w):
                return i
        return None

    def by_ids(self, ids: Iterable[str]) -> list[StateVector]:
        try:
            return [self.vectors[self.ids[i]] for i in ids]
        except KeyError as e:
            raise ScenarioError(f"unknown vector id {e.args[0]!r}") from None

    def __add__(self, other: Iterable[StateVector]) -> "Pool":
        return Pool(list(self.vectors) + list(other), strict=False)


def _key(c: StateVector):
    return c.entries if c.exact else None


def _same(a: StateVector, b: StateVector) -> bool:
    return a.dim == b.dim and all(x == y for x, y in zip(a.entries, b.entries))


def as_pool(vs) -> Pool:
    return vs if isinstance(vs, Pool) else Pool(vs, strict=False)


@dataclass(frozen=True)
class Scenario:
    """Hypergraph: canonical vertices plus contexts of exactly ``dim`` orthogonal vertices."""

    vertices: tuple[StateVector, ...]
    contexts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = Pool(self.vertices).vectors
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "contexts", tuple(tuple(sorted(c)) for c in self.contexts))
        n, d = len(vs), (vs[0].dim if vs else 0)
        for c in self.contexts:
            if len(c) != d or len(set(c)) != d:
                raise ScenarioError(f"context {c} does not have {d} distinct members")
            if any(i < 0 or i >= n for i in c):
                raise ScenarioError(f"context {c} references a missing vertex")
            for i, j in itertools.combinations(c, 2):
                if not is_orthogonal(vs[i], vs[j]):
                    raise ScenarioError(
                        f"context {c}: {vs[i].id!r} and {vs[j].id!r} are not orthogonal"
                    )

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    @cached_property
    def adjacency(self) -> list[frozenset[int]]:
        return orthogonality_graph(self.vertices)

    @cached_property
    def ids(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    def index(self, id: str) -> int:
        try:
            return self.ids[id]
        except KeyError:
            raise ScenarioError(f"unknown vertex id {id!r}") from None

    def degree(self, i: int) -> int:
        return sum(i in c for c in self.contexts)


def _cliques(adj: Sequence[frozenset[int]], size: int) -> list[tuple[int, ...]]:
    """All ``size``-cliques, lexicographic in index order."""
    out: list[tuple[int, ...]] = []

    def grow(clique: list[int], cand: list[int]):
        if len(clique) == size:
            out.append(tuple(clique))
            return
        need = size - len(clique)
        for k, v in enumerate(cand):
            if len(cand) - k < need:
                break
            if len(adj[v]) < size - 1:
                continue
            grow(clique + [v], [u for u in cand[k + 1:] if u in adj[v]])

    grow([], list(range(len(adj))))
    return out


def enumerate_contexts(pool) -> Scenario:
    """All d-subsets of mutually orthogonal pool vectors, in lexicographic order."""
    pool = as_pool(pool)
    if not len(pool):
        raise ScenarioError("empty pool")
    adj = orthogonality_graph(pool.vectors)
    sc = Scenario(pool.vectors, tuple(_cliques(adj, pool.dim)))
    sc.__dict__["adjacency"] = adj  # seed the cached property
    return sc


def implied_projectors(S, pool) -> tuple[int, ...]:
    """Indices of pool vectors orthogonal to some member of S, excluding S itself."""
    S, pool = list(S), as_pool(pool)
    for s in S:
        if s.dim != pool.dim:
            raise DimensionMismatch(f"{s.id!r} has dim {s.dim}, pool has dim {pool.dim}")
    members = {pool.index_of(s) for s in S}
    return tuple(
        i
        for i, v in enumerate(pool)
        if i not in members and any(is_orthogonal(v, s) for s in S)
    )


def _check_indices(n: int, S: Iterable[int]) -> list[int]:
    S = list(S)
    for i in S:
        if not isinstance(i, int) or i < 0 or i >= n:
            raise ScenarioError(f"invalid vertex index {i!r}")
    return S


def is_generated_by(scenario: Scenario, S: Iterable[int]) -> bool:
    """Check all three generation conditions against ``scenario``.

    Vertices outside S must each be orthogonal to some member of S, and the
    contexts must be exactly the contexts formable from the vertices.
    """
    S = set(_check_indices(len(scenario.vertices), S))
    adj = scenario.adjacency
    for i in range(len(scenario.vertices)):
        if i not in S and not (adj[i] & S):
            return False
    expected = set(_cliques(adj, scenario.dim))
    return set(scenario.contexts) == expected


def check_non_orthogonal(S: Sequence[StateVector]) -> None:
    for u, v in itertools.combinations(S, 2):
        if is_orthogonal(u, v):
            raise ScenarioError(f"{u.id!r} and {v.id!r} are orthogonal")


def generate_scenario(S, pool) -> Scenario:
    """Scenario on S followed by its implied pool vectors, with every formable context.

    Members of S occupy vertex indices 0..len(S)-1 in the given order.
    """
    S = list(Pool(S).vectors)
    check_non_orthogonal(S)
    pool = as_pool(pool)
    implied = [pool[i] for i in implied_projectors(S, pool)] if len(pool) else []
    return enumerate_contexts(Pool(S + implied))


def closure(S, max_rounds: int) -> Pool:
    """Grow S by orthogonal completions of every orthogonal (d-1)-subset.

    Stops at a fixpoint or after ``max_rounds`` rounds.
    """
    if max_rounds < 0:
        raise ScenarioError("max_rounds must be non-negative")
    pool = as_pool(S)
    if not len(pool):
        return pool
    d = pool.dim
    for rnd in range(max_rounds):
        adj = orthogonality_graph(pool.vectors)
        new: list[StateVector] = []
        for k, clique in enumerate(_cliques(adj, d - 1)):
            try:
                c = orthogonal_completion([pool[i] for i in clique], d, id=f"c{rnd + 1}.{k}")
            except AlgebraError:
                continue
            new.append(c)
        grown = pool + new
        if len(grown) == len(pool):
            break
        pool = grown
    return pool
