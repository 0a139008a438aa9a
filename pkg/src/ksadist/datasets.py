"""The four vector sets worked through in the examples, shipped as scenario JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .antidist import Pvm, validate_pvm
from .coloring import ks_color
from .io import parse_pool
from .scenario import Pool, Scenario, enumerate_contexts

NAMES = ("cabello18", "lisonek21", "yuoh13", "pbr")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    name: str
    dimension: int
    field: str
    description: str
    pool: Pool
    scenario: Scenario
    annotations: dict = field(default_factory=dict)

    @property
    def states(self) -> list:
        """Annotated state set, if any."""
        return self.pool.by_ids(self.annotations.get("states", []))

    @property
    def pvm(self) -> Pvm | None:
        els = self.annotations.get("pvm")
        if not els:
            return None
        return Pvm(self.dimension, [self.pool.by_ids(e) for e in els])

    def ids(self, *names: str) -> list[int]:
        return [self.scenario.index(n) for n in names]


def raw_json(name: str) -> str:
    if name not in NAMES:
        raise DatasetError(f"unknown dataset {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("ksadist").joinpath("data", f"{name}.json").read_text()


def _validate(ds: Dataset) -> None:
    exp = ds.annotations.get("expected", {})
    sc = ds.scenario
    if "contexts" in exp and len(sc.contexts) != exp["contexts"]:
        raise DatasetError(f"{ds.name}: {len(sc.contexts)} contexts, expected {exp['contexts']}")
    if "vertex_degree" in exp:
        bad = [v.id for i, v in enumerate(sc.vertices) if sc.degree(i) != exp["vertex_degree"]]
        if bad:
            raise DatasetError(f"{ds.name}: vertices {bad} have the wrong context degree")
    if ds.name == "yuoh13" and ks_color(sc) is None:
        raise DatasetError("yuoh13 scenario should admit a colouring")
    if ds.pvm is not None and not validate_pvm(ds.pvm):
        raise DatasetError(f"{ds.name}: annotated measurement is not a valid PVM")


@lru_cache(maxsize=None)
def load_dataset(name: str) -> Dataset:
    data = json.loads(raw_json(name))
    pool = parse_pool(data)
    ds = Dataset(
        name=data["name"],
        dimension=data["dimension"],
        field=data["field"],
        description=data.get("description", ""),
        pool=pool,
        scenario=enumerate_contexts(pool),
        annotations=data.get("annotations", {}),
    )
    _validate(ds)
    return ds
