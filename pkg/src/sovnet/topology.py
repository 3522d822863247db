"""Topology model, SNDlib ingestion and the graph primitives the rest of the
package is built on.

All graphs are undirected, simple and hop-count weighted. Node IDs are
strings; wherever an ordering is needed it is plain lexicographic order on
the IDs so downstream tie-breaking is reproducible.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations
from typing import Iterable, Mapping

import networkx as nx


class TopologyError(ValueError):
    """Raised for malformed topology documents or invalid graphs."""


class CentralityKind(enum.Enum):
    NODAL_DEGREE = "nd"
    BETWEENNESS = "bwc"
    CLOSENESS = "cc"


def _edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Flow:
    """Unordered source/destination pair; stored with ``src < dst``."""

    src: str
    dst: str

    def __post_init__(self):
        if self.src == self.dst:
            raise TopologyError(f"flow endpoints must differ: {self.src!r}")
        if self.dst < self.src:
            a, b = self.dst, self.src
            object.__setattr__(self, "src", a)
            object.__setattr__(self, "dst", b)

    def __str__(self):
        return f"{self.src}-{self.dst}"


@dataclass(frozen=True)
class Topology:
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    name: str = ""

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple[str, str]], name: str = ""):
        nodes = tuple(nodes)
        if len(set(nodes)) != len(nodes):
            raise TopologyError("duplicate node ID")
        if not nodes:
            raise TopologyError("topology has no nodes")
        known = set(nodes)
        canon = set()
        for a, b in edges:
            if a == b:
                raise TopologyError(f"self-loop on {a!r}")
            for v in (a, b):
                if v not in known:
                    raise TopologyError(f"edge references unknown node {v!r}")
            canon.add(_edge(a, b))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "name", name)
        if not self._connected():
            raise TopologyError(f"topology {name!r} is not connected")

    @cached_property
    def adj(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def sorted_nodes(self) -> tuple[str, ...]:
        return tuple(sorted(self.nodes))

    def degree(self, v: str) -> int:
        return len(self.adj[v])

    def has_edge(self, a: str, b: str) -> bool:
        return _edge(a, b) in self.edges

    def _connected(self) -> bool:
        return len(_reachable(self.adj, self.nodes[0], None)) == len(self.nodes)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(sorted(self.edges))
        return g

    def __len__(self):
        return len(self.nodes)


def _reachable(adj: Mapping[str, Iterable[str]], start: str, alive) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen and (alive is None or w in alive):
                seen.add(w)
                queue.append(w)
    return seen


# --------------------------------------------------------------------------
# SNDlib native format (subset)
# --------------------------------------------------------------------------

_SECTION_RE = re.compile(r"^\s*([A-Z_]+)\s*\(\s*$")
_NODE_RE = re.compile(r"^\s*(\S+)(?:\s*\(\s*([-+0-9.eE]+)\s+([-+0-9.eE]+)\s*\))?")
_LINK_RE = re.compile(r"^\s*(\S+)\s*\(\s*(\S+)\s+(\S+)\s*\)")


def _sections(text: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip() or line.lstrip().startswith("?"):
            continue
        if current is None:
            m = _SECTION_RE.match(line)
            if m:
                current = m.group(1)
                if current in sections:
                    raise TopologyError(f"line {lineno}: section {current} repeated")
                sections[current] = []
            continue
        if line.strip() == ")":
            current = None
            continue
        sections[current].append(line)
    if current is not None:
        raise TopologyError(f"section {current} is not terminated")
    return sections


def parse_topology(text: str, name: str = "") -> Topology:
    """Parse the NODES and LINKS sections of an SNDlib native-format document.

    Coordinates and link attributes are read past and dropped. Parallel links
    between the same pair of nodes collapse into one undirected edge.
    """
    sections = _sections(text)
    for required in ("NODES", "LINKS"):
        if required not in sections:
            raise TopologyError(f"missing {required} section")
    nodes = []
    for line in sections["NODES"]:
        m = _NODE_RE.match(line)
        if not m:
            raise TopologyError(f"malformed node line: {line.strip()!r}")
        nodes.append(m.group(1))
    if len(set(nodes)) != len(nodes):
        dup = next(v for v in nodes if nodes.count(v) > 1)
        raise TopologyError(f"duplicate node ID {dup!r}")
    known = set(nodes)
    edges = []
    for line in sections["LINKS"]:
        m = _LINK_RE.match(line)
        if not m:
            raise TopologyError(f"malformed link line: {line.strip()!r}")
        link_id, a, b = m.groups()
        for v in (a, b):
            if v not in known:
                raise TopologyError(f"link {link_id!r} references unknown node {v!r}")
        edges.append((a, b))
    if not name:
        m = re.search(r"^#\s*network\s+(\S+)", text, re.MULTILINE)
        name = m.group(1) if m else ""
    return Topology(nodes, edges, name=name)


def serialize_topology(t: Topology) -> str:
    lines = ["?SNDlib native format; type: network; version: 1.0"]
    if t.name:
        lines.append(f"# network {t.name}")
    lines += ["", "NODES ("]
    lines += [f"  {v}" for v in t.nodes]
    lines += [")", "", "LINKS ("]
    for i, (a, b) in enumerate(sorted(t.edges)):
        lines.append(f"  L{i} ( {a} {b} )")
    lines += [")", ""]
    return "\n".join(lines)


def read_topology(path) -> Topology:
    with open(path, encoding="utf-8") as fh:
        return parse_topology(fh.read())


BUNDLED = ("abilene", "polska", "germany17", "nobel-eu", "fig1-dcn")


def load_bundled(name: str) -> Topology:
    """Load one of the topologies shipped in ``sovnet/data``."""
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled topology {name!r}; choose from {BUNDLED}")
    text = resources.files("sovnet.data").joinpath(f"{name}.txt").read_text("utf-8")
    return parse_topology(text, name=name)


def benchmark_topologies() -> dict[str, Topology]:
    """The four core networks in their evaluated form (Abilene pruned)."""
    return {
        "abilene": prune_degree_one(load_bundled("abilene")),
        "polska": load_bundled("polska"),
        "germany17": load_bundled("germany17"),
        "nobel-eu": load_bundled("nobel-eu"),
    }


# --------------------------------------------------------------------------
# Graph operations
# --------------------------------------------------------------------------

def prune_degree_one(t: Topology) -> Topology:
    """Strip degree-1 nodes until none remain (a pendant chain prunes fully)."""
    nodes = list(t.nodes)
    edges = set(t.edges)
    while True:
        deg = {v: 0 for v in nodes}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        leaves = {v for v in nodes if deg[v] == 1}
        if not leaves:
            break
        nodes = [v for v in nodes if v not in leaves]
        edges = {e for e in edges if e[0] not in leaves and e[1] not in leaves}
    if not nodes:
        raise TopologyError("pruning removed every node")
    return Topology(nodes, edges, name=t.name)


def enumerate_flows(t: Topology) -> list[Flow]:
    """All non-adjacent node pairs, lexicographically ordered."""
    return [Flow(a, b) for a, b in combinations(t.sorted_nodes, 2) if not t.has_edge(a, b)]


def all_pairs(t: Topology) -> list[Flow]:
    """Every unordered node pair, one-hop pairs included."""
    return [Flow(a, b) for a, b in combinations(t.sorted_nodes, 2)]


def centrality(t: Topology, kind: CentralityKind) -> dict[str, float]:
    kind = CentralityKind(kind)
    if kind is CentralityKind.NODAL_DEGREE:
        return {v: float(t.degree(v)) for v in t.nodes}
    g = t.to_networkx()
    if kind is CentralityKind.BETWEENNESS:
        return dict(nx.betweenness_centrality(g, normalized=True))
    return dict(nx.closeness_centrality(g))


def k_shortest_paths(t: Topology, f: Flow, k: int = 10) -> list[tuple[str, ...]]:
    """Up to ``k`` loopless paths by hop count.

    Equal-length paths are ranked by their node sequence, so the cut-off at
    position ``k`` does not depend on the search order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    found: list[tuple[str, ...]] = []
    cutoff = None
    for p in nx.shortest_simple_paths(t.to_networkx(), f.src, f.dst):
        if cutoff is not None and len(p) > cutoff:
            break
        found.append(tuple(p))
        if cutoff is None and len(found) >= k:
            cutoff = len(p)
    found.sort(key=lambda p: (len(p), p))
    return found[:k]


def is_connected_subgraph(t: Topology, alive: Iterable[str], f: Flow) -> bool:
    alive = set(alive)
    if f.src not in alive or f.dst not in alive:
        return False
    return f.dst in _reachable(t.adj, f.src, alive)


def components(t: Topology, alive: Iterable[str]) -> dict[str, int]:
    """Component label for every alive node of the induced subgraph."""
    alive = set(alive)
    label: dict[str, int] = {}
    count = 0
    for v in t.sorted_nodes:
        if v in alive and v not in label:
            for w in _reachable(t.adj, v, alive):
                label[w] = count
            count += 1
    return label
