"""Sovereignty scores: MCS/Flow/Network CSC and the path-set-diversity (PSD)
baseline.

Every score is an exact :class:`fractions.Fraction`; convert with ``float()``
only when reporting.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .cutsets import CutSetCatalog, MinimalCutSet
from .topology import Flow, Topology, k_shortest_paths

DEFAULT_PSD_K = 10


class AssignmentError(ValueError):
    pass


class Assignment(Mapping):
    """Total map node ID -> manufacturer ID in ``range(m)``."""

    def __init__(self, labels: Mapping[str, int], m: int):
        if m < 1:
            raise AssignmentError("manufacturer count must be >= 1")
        self._labels = dict(labels)
        self.m = m
        for v, k in self._labels.items():
            if not isinstance(k, int) or not 0 <= k < m:
                raise AssignmentError(f"node {v!r}: manufacturer {k!r} outside 0..{m - 1}")

    def __getitem__(self, v: str) -> int:
        try:
            return self._labels[v]
        except KeyError:
            raise AssignmentError(f"node {v!r} is not assigned") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._labels)

    def __len__(self):
        return len(self._labels)

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self.m == other.m and self._labels == other._labels
        return NotImplemented

    def __repr__(self):
        return f"Assignment({self._labels!r}, m={self.m})"

    def check_total(self, t: Topology) -> None:
        missing = [v for v in t.nodes if v not in self._labels]
        if missing:
            raise AssignmentError(f"node {missing[0]!r} has no manufacturer")
        extra = [v for v in self._labels if v not in t.adj]
        if extra:
            raise AssignmentError(f"unknown node {extra[0]!r}")

    def relabel(self, perm: Sequence[int], m: int | None = None) -> "Assignment":
        """Apply ``k -> perm[k]`` to every manufacturer ID."""
        return Assignment({v: perm[k] for v, k in self._labels.items()}, self.m if m is None else m)

    def usage(self) -> list[int]:
        counts = [0] * self.m
        for k in self._labels.values():
            counts[k] += 1
        return counts

    def to_csv(self, order: Iterable[str] | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["node", "manufacturer"])
        for v in (order if order is not None else sorted(self._labels)):
            w.writerow([v, self._labels[v]])
        return buf.getvalue()


# --------------------------------------------------------------------------
# CSC
# --------------------------------------------------------------------------

def mcs_csc_score(mcs: MinimalCutSet | Iterable[str], a: Mapping[str, int]) -> Fraction:
    nodes = list(mcs)
    makers = {a[v] for v in nodes}
    if len(makers) == 1:
        return Fraction(0)
    return Fraction(len(makers), len(nodes))


def flow_csc_score(mcs_list: Sequence[MinimalCutSet], a: Mapping[str, int]) -> Fraction:
    """A flow is only as sovereign as its least diverse cut set."""
    if not mcs_list:
        raise ValueError("flow has no minimal cut sets")
    return min(mcs_csc_score(m, a) for m in mcs_list)


def _quartiles(xs: list[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    if len(xs) == 1:
        return xs[0], xs[0], xs[0]
    q1, q2, q3 = statistics.quantiles(xs, n=4, method="inclusive")
    return q1, q2, q3


@dataclass(frozen=True)
class ScoreDistribution:
    """Flow-CSC scores of a network, with Tukey box-plot statistics."""

    per_flow: dict[Flow, Fraction]

    def __post_init__(self):
        if not self.per_flow:
            raise ValueError("no flows to summarise")

    @property
    def values(self) -> list[Fraction]:
        return sorted(self.per_flow.values())

    @property
    def min(self) -> Fraction:
        return self.values[0]

    @property
    def max(self) -> Fraction:
        return self.values[-1]

    @property
    def mean(self) -> Fraction:
        return statistics.mean(self.values)

    @property
    def quartiles(self) -> tuple[Fraction, Fraction, Fraction]:
        return _quartiles(self.values)

    @property
    def whiskers(self) -> tuple[Fraction, Fraction]:
        q1, _, q3 = self.quartiles
        fence = Fraction(3, 2) * (q3 - q1)
        inside = [x for x in self.values if q1 - fence <= x <= q3 + fence]
        return inside[0], inside[-1]

    @property
    def outliers(self) -> list[Fraction]:
        lo, hi = self.whiskers
        return [x for x in self.values if x < lo or x > hi]

    def summary(self) -> dict[str, float]:
        q1, med, q3 = self.quartiles
        lo, hi = self.whiskers
        return {
            "flows": len(self.per_flow),
            "min": float(self.min),
            "q1": float(q1),
            "median": float(med),
            "q3": float(q3),
            "max": float(self.max),
            "mean": float(self.mean),
            "whisker_low": float(lo),
            "whisker_high": float(hi),
            "outliers": [float(x) for x in self.outliers],
        }

    def to_json(self) -> str:
        doc = {
            "per_flow": [
                {"src": f.src, "dst": f.dst, "num": s.numerator, "den": s.denominator, "value": float(s)}
                for f, s in self.per_flow.items()
            ],
            "summary": self.summary(),
        }
        return json.dumps(doc, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["src", "dst", "num", "den", "value"])
        for f, s in self.per_flow.items():
            w.writerow([f.src, f.dst, s.numerator, s.denominator, f"{float(s):.6f}"])
        return buf.getvalue()


def network_csc_score(catalog: CutSetCatalog, a: Mapping[str, int]) -> ScoreDistribution:
    return ScoreDistribution({f: flow_csc_score(sets, a) for f, sets in catalog})


def csc_objectives(catalog: CutSetCatalog, a: Mapping[str, int]) -> tuple[Fraction, Fraction]:
    """(minimum, sum) of MCS-CSC over every MCS of every flow."""
    scores = [mcs_csc_score(m, a) for m in catalog.all_sets()]
    return min(scores), sum(scores, Fraction(0))


# --------------------------------------------------------------------------
# PSD
# --------------------------------------------------------------------------

def path_psd_score(path: Sequence[str], a: Mapping[str, int]) -> Fraction:
    """Reciprocal of the number of manufacturers on the path's intermediate nodes."""
    if len(path) < 3:
        raise ValueError("path needs at least one intermediate node")
    return Fraction(1, len({a[v] for v in path[1:-1]}))


def flow_psd_score(t: Topology, f: Flow, a: Mapping[str, int], k: int = DEFAULT_PSD_K) -> Fraction:
    if k < 1:
        raise ValueError("k must be >= 1")
    paths = k_shortest_paths(t, f, k)
    if not paths:
        raise ValueError(f"no path for flow {f}")
    # one representative per manufacturer set
    reps = {frozenset(a[v] for v in p[1:-1]): p for p in paths}
    return sum((path_psd_score(p, a) for p in reps.values()), Fraction(0))


def network_psd_score(
    t: Topology, flows: Sequence[Flow], a: Mapping[str, int], k: int = DEFAULT_PSD_K
) -> Fraction:
    if not flows:
        raise ValueError("no flows")
    return statistics.mean(flow_psd_score(t, f, a, k) for f in flows)
