"""Reference implementations and graph builders shared by the tests."""

import random

from sovnet.topology import Topology


def random_connected(rng: random.Random, lo: int = 5, hi: int = 10) -> Topology:
    """Random connected simple graph: a random spanning tree plus extra edges."""
    n = rng.randint(lo, hi)
    nodes = [f"v{i}" for i in range(n)]
    order = nodes[:]
    rng.shuffle(order)
    edges = {(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    p = rng.uniform(0.1, 0.6)
    edges |= {(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:] if rng.random() < p}
    return Topology(nodes, edges, name="random")


def path_graph(names):
    return Topology(names, list(zip(names, names[1:])))


def all_simple_paths(t: Topology, src: str, dst: str):
    """Plain DFS over every loopless path, used as a reference."""
    out = []

    def walk(path, seen):
        v = path[-1]
        if v == dst:
            out.append(tuple(path))
            return
        for w in sorted(t.adj[v]):
            if w not in seen:
                seen.add(w)
                path.append(w)
                walk(path, seen)
                path.pop()
                seen.discard(w)

    walk([src], {src})
    return out


def brute_centralities(t: Topology):
    """Betweenness and closeness from an explicit list of every shortest path."""
    nodes = t.sorted_nodes
    n = len(nodes)
    shortest = {}
    for i, s in enumerate(nodes):
        for d in nodes[i + 1:]:
            paths = all_simple_paths(t, s, d)
            best = min(len(p) for p in paths)
            shortest[s, d] = [p for p in paths if len(p) == best]
    bwc = {}
    for v in nodes:
        total = 0.0
        for (s, d), paths in shortest.items():
            if v in (s, d):
                continue
            total += sum(v in p for p in paths) / len(paths)
        pairs = (n - 1) * (n - 2) / 2
        bwc[v] = total / pairs if pairs else 0.0
    cc = {}
    for v in nodes:
        dist = sum(len(paths[0]) - 1 for (s, d), paths in shortest.items() if v in (s, d))
        cc[v] = (n - 1) / dist if dist else 0.0
    return bwc, cc


# criterion number -> one-line verdict, printed in the terminal summary
VERDICTS: dict[int, str] = {}


def verdict(n: int, ok: bool, detail: str) -> str:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    VERDICTS[n] = line
    print(line)
    return line
