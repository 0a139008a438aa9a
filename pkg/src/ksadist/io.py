"""JSON file formats (scenarios, PVMs, verdicts) and DOT export."""

from __future__ import annotations

import json
import re
from typing import Any, Mapping, Sequence

from .algebra import AlgebraError, Approx, StateVector, parse_scalar
from .antidist import Pvm
from .scenario import Pool, Scenario, ScenarioError, enumerate_contexts

FIELDS = ("cyclotomic3", "float")


class FormatError(ValueError):
    pass


def _parse_vector(raw: Any, d: int, field: str, id: str) -> StateVector:
    if not isinstance(raw, list):
        raise FormatError(f"vector {id!r} must be a list of scalar strings")
    if len(raw) != d:
        raise FormatError(f"vector {id!r} has {len(raw)} entries, dimension is {d}")
    try:
        return StateVector(id, [parse_scalar(str(x), field) for x in raw])
    except AlgebraError as e:
        raise FormatError(f"vector {id!r}: {e}") from None


def _load(text: str | Mapping) -> dict:
    if isinstance(text, Mapping):
        return dict(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object")
    return data


def _header(data: dict) -> tuple[int, str]:
    d = data.get("dimension")
    if not isinstance(d, int) or d < 1:
        raise FormatError("'dimension' must be a positive integer")
    field = data.get("field", "cyclotomic3")
    if field not in FIELDS:
        raise FormatError(f"'field' must be one of {FIELDS}")
    return d, field


def parse_pool(text: str | Mapping) -> Pool:
    data = _load(text)
    d, field = _header(data)
    raw = data.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise FormatError("'vertices' must be a non-empty list")
    vs = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict) or "vector" not in item:
            raise FormatError(f"vertex #{k} must be an object with 'id' and 'vector'")
        vs.append(_parse_vector(item["vector"], d, field, str(item.get("id", f"v{k}"))))
    ids = [v.id for v in vs]
    dup_ids = sorted({i for i in ids if ids.count(i) > 1})
    if dup_ids:
        raise FormatError(f"duplicate vertex ids: {dup_ids}")
    try:
        return Pool(vs, strict=True)
    except ScenarioError as e:
        raise FormatError(str(e)) from None


def parse_stateset(text: str | Mapping) -> Scenario:
    """Scenario from the JSON format; contexts are recomputed when absent."""
    data = _load(text)
    pool = parse_pool(data)
    if data.get("contexts") is None:
        return enumerate_contexts(pool)
    try:
        ctxs = [tuple(pool.ids[i] for i in c) for c in data["contexts"]]
    except (KeyError, TypeError) as e:
        raise FormatError(f"context references unknown vertex {e}") from None
    try:
        return Scenario(pool.vectors, tuple(ctxs))
    except ScenarioError as e:
        raise FormatError(str(e)) from None


def field_of(vectors: Sequence[StateVector]) -> str:
    return "float" if isinstance(vectors[0].entries[0], Approx) else "cyclotomic3"


def dumps(obj: Any) -> str:
    """json.dumps with innermost scalar lists kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return re.sub(
        r"\[\s*([^\[\]{}]*?)\s*\]",
        lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]",
        text,
    )


def vector_to_json(v: StateVector) -> dict:
    return {"id": v.id, "vector": [str(x) for x in v.entries]}


def scenario_to_dict(scenario: Scenario, extra: Mapping | None = None) -> dict:
    out: dict = dict(extra or {})
    out.update(
        {
            "dimension": scenario.dim,
            "field": field_of(scenario.vertices),
            "vertices": [vector_to_json(v) for v in scenario.vertices],
            "contexts": [[scenario.vertices[i].id for i in c] for c in scenario.contexts],
        }
    )
    return out


def serialize_scenario(scenario: Scenario, extra: Mapping | None = None) -> str:
    return dumps(scenario_to_dict(scenario, extra)) + "\n"


def pool_to_dict(vectors: Sequence[StateVector]) -> dict:
    return {
        "dimension": vectors[0].dim,
        "field": field_of(vectors),
        "vertices": [vector_to_json(v) for v in vectors],
    }


def parse_pvm(text: str | Mapping, pool: Pool | None = None) -> Pvm:
    """PVM elements may list pool ids or inline scalar-string vectors."""
    data = _load(text)
    d, field = _header(data)
    elements = data.get("elements")
    if not isinstance(elements, list) or not elements:
        raise FormatError("'elements' must be a non-empty list")
    out = []
    for j, el in enumerate(elements):
        if not isinstance(el, list) or not el:
            raise FormatError(f"element #{j} must be a non-empty list")
        vs = []
        for k, item in enumerate(el):
            if isinstance(item, str):
                if pool is None or item not in pool.ids:
                    raise FormatError(f"element #{j} references unknown vector {item!r}")
                vs.append(pool[pool.ids[item]])
            else:
                vs.append(_parse_vector(item, d, field, f"e{j}.{k}"))
        out.append(vs)
    return Pvm(d, out)


def pvm_to_dict(pvm: Pvm) -> dict:
    vs = pvm.vectors()
    return {
        "dimension": pvm.dim,
        "field": field_of(vs),
        "elements": [[[str(x) for x in v.entries] for v in e] for e in pvm.elements],
        "element_ids": [[v.id for v in e] for e in pvm.elements],
    }


def assignment_to_dict(scenario: Scenario, nu: Mapping[int, int] | None) -> dict:
    if nu is None:
        return {"status": "unsat", "assignment": {}}
    return {
        "status": "sat",
        "assignment": {scenario.vertices[i].id: nu[i] for i in sorted(nu)},
    }


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(scenario: Scenario, name: str = "scenario") -> str:
    """Bipartite DOT graph: vertex nodes, box-shaped context nodes, membership edges."""
    lines = [f"graph {_dot_id(name)} {{"]
    for k, v in enumerate(scenario.vertices):
        lines.append(f"  v{k} [label={_dot_id(v.id)}];")
    for k in range(len(scenario.contexts)):
        lines.append(f'  C{k} [label="C{k}", shape=box];')
    for k, c in enumerate(scenario.contexts):
        for i in c:
            lines.append(f"  v{i} -- C{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
