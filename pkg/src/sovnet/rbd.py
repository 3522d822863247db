"""Series/parallel reliability block diagrams."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Union


@dataclass(frozen=True)
class Leaf:
    node: str
    availability: float

    def __post_init__(self):
        if not 0.0 <= self.availability <= 1.0:
            raise ValueError(f"availability of {self.node!r} outside [0, 1]")


@dataclass(frozen=True)
class Series:
    children: tuple["RbdExpr", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("series block needs at least one child")


@dataclass(frozen=True)
class Parallel:
    children: tuple["RbdExpr", ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("parallel block needs at least one child")


RbdExpr = Union[Leaf, Series, Parallel]


def eval_rbd(e: RbdExpr) -> float:
    if isinstance(e, Leaf):
        return e.availability
    values = [eval_rbd(c) for c in e.children]
    if isinstance(e, Series):
        return math.prod(values)
    return 1.0 - math.prod(1.0 - x for x in values)


def from_dict(doc: dict) -> RbdExpr:
    kind = doc.get("type")
    if kind == "leaf":
        return Leaf(doc["node"], float(doc["availability"]))
    if kind in ("series", "parallel"):
        children = tuple(from_dict(c) for c in doc.get("children", ()))
        return Series(children) if kind == "series" else Parallel(children)
    raise ValueError(f"unknown block type {kind!r}")


def to_dict(e: RbdExpr) -> dict:
    if isinstance(e, Leaf):
        return {"type": "leaf", "node": e.node, "availability": e.availability}
    kind = "series" if isinstance(e, Series) else "parallel"
    return {"type": kind, "children": [to_dict(c) for c in e.children]}


def loads(text: str) -> RbdExpr:
    return from_dict(json.loads(text))


def load_bundled(name: str) -> RbdExpr:
    """``fig1-rbd-single`` (one manufacturer) or ``fig1-rbd-multi`` (four)."""
    return loads(resources.files("sovnet.data").joinpath(f"{name}.json").read_text("utf-8"))
