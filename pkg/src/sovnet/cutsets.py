"""Minimal s-t vertex cut sets (minimal separators) per flow.

The enumerator grows the source side one vertex at a time: starting from the
separator closest to the source, each separator ``S`` spawns a neighbour for
every ``x`` in ``S`` by absorbing ``x`` into the source component and taking
the neighbourhood of the resulting target component. Every minimal s-t
separator is reached this way, and each is produced in time polynomial in the
graph size, so the cost scales with the output rather than with ``2**|V|``.

Vertex sets are handled as Python int bitmasks internally.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from statistics import fmean
from typing import Iterable, Iterator, Sequence

from .topology import Flow, Topology, enumerate_flows, is_connected_subgraph


@dataclass(frozen=True)
class MinimalCutSet:
    nodes: frozenset[str]
    flow: Flow

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(sorted(self.nodes))

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.key)


def _order(sets: Iterable[MinimalCutSet]) -> list[MinimalCutSet]:
    return sorted(sets, key=lambda m: (len(m.key), m.key))


class _Masks:
    def __init__(self, t: Topology):
        self.names = t.sorted_nodes
        self.index = {v: i for i, v in enumerate(self.names)}
        self.nbr = [0] * len(self.names)
        for a, b in t.edges:
            ia, ib = self.index[a], self.index[b]
            self.nbr[ia] |= 1 << ib
            self.nbr[ib] |= 1 << ia

    def neighbourhood(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            out |= self.nbr[low.bit_length() - 1]
            m ^= low
        return out & ~mask

    def component(self, start: int, blocked: int) -> int:
        seen = 1 << start
        frontier = seen
        while frontier:
            grow = self.neighbourhood(frontier) & ~blocked & ~seen
            seen |= grow
            frontier = grow
        return seen

    def decode(self, mask: int) -> frozenset[str]:
        return frozenset(self.names[i] for i in _bits(mask))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_mcs(t: Topology, f: Flow, max_cardinality: int | None = None) -> list[MinimalCutSet]:
    """All minimal vertex separators of ``f.src`` and ``f.dst``.

    Sorted by cardinality, then by the sorted node-ID tuple. ``max_cardinality``
    only filters the output; the search itself is always complete.
    """
    if t.has_edge(f.src, f.dst):
        raise ValueError(f"flow {f} is one hop; it has no vertex cut set")
    mk = _Masks(t)
    s, d = mk.index[f.src], mk.index[f.dst]
    dst_bit = 1 << d

    def close_to(side: int) -> int:
        # separator made of the target component's neighbourhood, nearest to `side`
        target = mk.component(d, side | mk.neighbourhood(side))
        return mk.neighbourhood(target)

    first = close_to(1 << s)
    seen = {first}
    stack = [first]
    while stack:
        sep = stack.pop()
        src_side = mk.component(s, sep)
        for x in _bits(sep):
            if mk.nbr[x] & dst_bit:
                continue
            nxt = close_to(src_side | (1 << x))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)

    out = (MinimalCutSet(mk.decode(m), f) for m in seen)
    if max_cardinality is not None:
        out = (m for m in out if len(m) <= max_cardinality)
    return _order(out)


def is_cut(t: Topology, nodes: Iterable[str], f: Flow) -> bool:
    removed = set(nodes)
    return not is_connected_subgraph(t, (v for v in t.nodes if v not in removed), f)


def brute_force_mcs(t: Topology, f: Flow, max_nodes: int = 16) -> list[MinimalCutSet]:
    """Reference enumeration over every subset of intermediate nodes."""
    if len(t.nodes) > max_nodes:
        raise ValueError(f"{len(t.nodes)} nodes exceeds the brute-force limit of {max_nodes}")
    inner = [v for v in t.sorted_nodes if v not in (f.src, f.dst)]
    cuts: list[frozenset[str]] = []
    # increasing size, so any cut containing an earlier cut is non-minimal
    for r in range(len(inner) + 1):
        for combo in combinations(inner, r):
            cand = frozenset(combo)
            if any(c <= cand for c in cuts):
                continue
            if is_cut(t, cand, f):
                cuts.append(cand)
    return _order(MinimalCutSet(c, f) for c in cuts)


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CutSetCatalog:
    """Per-flow MCS lists, kept in flow order."""

    entries: tuple[tuple[Flow, tuple[MinimalCutSet, ...]], ...]

    @property
    def flows(self) -> list[Flow]:
        return [f for f, _ in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, flow: Flow) -> tuple[MinimalCutSet, ...]:
        for f, sets in self.entries:
            if f == flow:
                return sets
        raise KeyError(flow)

    def all_sets(self) -> Iterator[MinimalCutSet]:
        for _, sets in self.entries:
            yield from sets

    def distinct_sets(self) -> Counter:
        """Node sets with their multiplicity across flows."""
        return Counter(m.key for m in self.all_sets())

    def to_json(self) -> str:
        doc = [
            {"flow": {"src": f.src, "dst": f.dst}, "mcs": [list(m.key) for m in sets]}
            for f, sets in self.entries
        ]
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "CutSetCatalog":
        entries = []
        for item in json.loads(text):
            f = Flow(item["flow"]["src"], item["flow"]["dst"])
            entries.append((f, tuple(_order(MinimalCutSet(frozenset(s), f) for s in item["mcs"]))))
        return cls(tuple(entries))


def _enumerate_job(args):
    t, f, cap = args
    return enumerate_mcs(t, f, cap)


def default_workers() -> int:
    return int(os.environ.get("SOVNET_WORKERS", "1"))


def build_catalog(
    t: Topology,
    flows: Sequence[Flow] | None = None,
    max_cardinality: int | None = None,
    workers: int | None = None,
) -> CutSetCatalog:
    """Enumerate MCSs for every flow (default: all non-adjacent pairs).

    With ``workers > 1`` flows are farmed out to a process pool; results are
    merged back in flow order, so the catalog is identical either way.
    """
    flows = list(enumerate_flows(t) if flows is None else flows)
    workers = default_workers() if workers is None else workers
    jobs = [(t, f, max_cardinality) for f in flows]
    if workers > 1 and len(flows) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_enumerate_job, jobs, chunksize=8))
    else:
        results = [_enumerate_job(j) for j in jobs]
    return CutSetCatalog(tuple((f, tuple(r)) for f, r in zip(flows, results)))


@dataclass(frozen=True)
class CatalogStats:
    mcs_count_per_flow: dict[Flow, int]
    histogram: dict[int, int]
    mean_cardinality: float
    max_cardinality: int
    distinct_histogram: dict[int, int]
    distinct_mean_cardinality: float

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def distinct_total(self) -> int:
        return sum(self.distinct_histogram.values())

    def as_dict(self) -> dict:
        return {
            "flows": len(self.mcs_count_per_flow),
            "mcs_total": self.total,
            "mean_cardinality": self.mean_cardinality,
            "max_cardinality": self.max_cardinality,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "distinct_total": self.distinct_total,
            "distinct_mean_cardinality": self.distinct_mean_cardinality,
            "distinct_histogram": {str(k): v for k, v in sorted(self.distinct_histogram.items())},
        }


def catalog_stats(c: CutSetCatalog) -> CatalogStats:
    """Cardinality statistics, counted per flow and over distinct node sets."""
    sizes = [len(m) for m in c.all_sets()]
    if not sizes:
        raise ValueError("catalog is empty")
    distinct = [len(k) for k in c.distinct_sets()]
    return CatalogStats(
        mcs_count_per_flow={f: len(sets) for f, sets in c},
        histogram=dict(sorted(Counter(sizes).items())),
        mean_cardinality=fmean(sizes),
        max_cardinality=max(sizes),
        distinct_histogram=dict(sorted(Counter(distinct).items())),
        distinct_mean_cardinality=fmean(distinct),
    )
