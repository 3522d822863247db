"""Baseline manufacturer assignments and assignment file I/O."""

from __future__ import annotations

import csv
import enum
import io
import warnings

from .cutsets import CutSetCatalog
from .scores import Assignment, AssignmentError
from .topology import CentralityKind, Topology, centrality


class StrategyKind(enum.Enum):
    CENTRALITY_ND = "nd"
    CENTRALITY_BWC = "bwc"
    CENTRALITY_CC = "cc"
    MIN_CUTSET_GREEDY = "mcs-greedy"
    LOADED = "loaded"
    OPTIMIZER = "csc-opt"


CENTRALITY_OF = {
    StrategyKind.CENTRALITY_ND: CentralityKind.NODAL_DEGREE,
    StrategyKind.CENTRALITY_BWC: CentralityKind.BETWEENNESS,
    StrategyKind.CENTRALITY_CC: CentralityKind.CLOSENESS,
}


def centrality_assignment(t: Topology, kind: CentralityKind, m: int, nodes=None) -> Assignment:
    """Round-robin over nodes sorted by descending centrality.

    Ties are broken by ascending node ID, so the result is deterministic.
    Centrality is always computed on the whole topology; ``nodes`` restricts
    which nodes are ranked and labelled (default: all of them).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    score = centrality(t, kind)
    # rounding keeps float noise in betweenness from splitting genuine ties
    order = sorted(t.nodes if nodes is None else nodes, key=lambda v: (-round(score[v], 12), v))
    return Assignment({v: i % m for i, v in enumerate(order)}, m)


def min_cutset_greedy(t: Topology, catalog: CutSetCatalog, m: int) -> Assignment:
    """Diversify small cut sets first.

    Distinct MCS node sets are visited by ascending cardinality, then by node
    IDs. Each unassigned node of the current set takes the manufacturer least
    represented in that set (lowest ID on ties). Nodes in no cut set get the
    globally least-used manufacturer.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    labels: dict[str, int] = {}
    usage = [0] * m

    def give(v, k):
        labels[v] = k
        usage[k] += 1

    for key in sorted(catalog.distinct_sets(), key=lambda s: (len(s), s)):
        local = [0] * m
        for v in key:
            if v in labels:
                local[labels[v]] += 1
        for v in key:
            if v not in labels:
                k = min(range(m), key=lambda j: (local[j], j))
                give(v, k)
                local[k] += 1
    for v in t.sorted_nodes:
        if v not in labels:
            give(v, min(range(m), key=lambda j: (usage[j], j)))
    return Assignment(labels, m)


def assignment_cost(a: Assignment, costs) -> float:
    return sum(costs[k] for k in a.values())


def warn_if_over_budget(a: Assignment, market) -> None:
    cost = assignment_cost(a, market.costs)
    if cost > market.threshold:
        warnings.warn(
            f"assignment cost {float(cost):.4f} exceeds threshold {float(market.threshold):.4f}",
            stacklevel=2,
        )


def load_assignment(text: str, t: Topology, m: int) -> Assignment:
    """Read ``node,manufacturer`` rows (header optional) and validate totality."""
    labels: dict[str, int] = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 2:
            raise AssignmentError(f"expected 2 columns, got {row!r}")
        node, maker = (c.strip() for c in row)
        if (node, maker) == ("node", "manufacturer"):
            continue
        if node not in t.adj:
            raise AssignmentError(f"unknown node {node!r}")
        if node in labels:
            raise AssignmentError(f"node {node!r} listed twice")
        try:
            k = int(maker)
        except ValueError:
            raise AssignmentError(f"node {node!r}: manufacturer {maker!r} is not an integer") from None
        if not 0 <= k < m:
            raise AssignmentError(f"node {node!r}: manufacturer {k} out of range 0..{m - 1}")
        labels[node] = k
    a = Assignment(labels, m)
    a.check_total(t)
    return a


def read_assignment(path, t: Topology, m: int) -> Assignment:
    with open(path, encoding="utf-8") as fh:
        return load_assignment(fh.read(), t, m)
