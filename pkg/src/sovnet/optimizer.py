"""Exact manufacturer assignment maximizing CSC scores under a cost budget.

The objective is lexicographic:

1. maximize ``z``, the smallest MCS-CSC score over every MCS of every flow;
2. with ``z`` held as a floor, maximize the sum of MCS-CSC scores over every
   MCS of every flow (sets shared by several flows count once per flow).

Both phases are integer programs solved by HiGHS (``scipy.optimize.milp``).
The MCS-CSC score only takes values ``a/c`` for cardinality ``c``, so phase 1
is a search over that finite candidate set: each step asks whether every MCS
can reach ``ceil(z*c)`` distinct manufacturers (at least 2 when ``z > 0``).
Phase 2 uses integer objective coefficients scaled by the lcm of the
cardinalities. No floating-point comparison of scores happens anywhere; the
returned objectives are recomputed exactly from the assignment.
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_array

from .cutsets import CutSetCatalog
from .scores import Assignment, csc_objectives
from .topology import Topology

log = logging.getLogger(__name__)

DEFAULT_TIME_LIMIT = 30 * 60.0
COST_HIGH = Fraction("0.995")
COST_LOW = Fraction("0.985")


class InfeasibleError(RuntimeError):
    """No assignment satisfies the cost threshold."""


class InstanceTooLarge(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


@dataclass(frozen=True)
class Market:
    m: int
    costs: tuple[Fraction, ...]
    threshold: Fraction

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(_frac(c) for c in self.costs))
        object.__setattr__(self, "threshold", _frac(self.threshold))
        if self.m < 1:
            raise ValueError("need at least one manufacturer")
        if len(self.costs) != self.m:
            raise ValueError(f"{len(self.costs)} costs given for {self.m} manufacturers")
        if any(c <= 0 for c in self.costs) or self.threshold <= 0:
            raise ValueError("costs and threshold must be positive")


def default_market(t: Topology, m: int) -> Market:
    """Costs spaced linearly from 0.995 down to 0.985; budget = |V| x mean cost.

    For m >= 2 the mean is always 0.99. A lone manufacturer has nothing to
    trade off, so its budget is simply |V| x 0.995.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        costs = (COST_HIGH,)
    else:
        step = (COST_HIGH - COST_LOW) / (m - 1)
        costs = tuple(COST_HIGH - i * step for i in range(m))
    return Market(m, costs, len(t.nodes) * sum(costs) / m)


@dataclass
class SolveResult:
    assignment: Assignment
    objective_min: Fraction
    objective_sum: Fraction
    total_cost: Fraction
    proof: bool
    runtime: float
    stats: dict = field(default_factory=dict)

    def to_json(self, order=None) -> str:
        doc = {
            "assignment_csv": self.assignment.to_csv(order),
            "objective_min": {"num": self.objective_min.numerator, "den": self.objective_min.denominator,
                              "value": float(self.objective_min)},
            "objective_sum": {"num": self.objective_sum.numerator, "den": self.objective_sum.denominator,
                              "value": float(self.objective_sum)},
            "total_cost": float(self.total_cost),
            "runtime_ms": round(self.runtime * 1000),
            "optimal": self.proof,
        }
        return json.dumps(doc, indent=1)


class _Problem:
    """Shared instance data: node order, distinct MCSs with multiplicity."""

    def __init__(self, t: Topology, catalog: CutSetCatalog, market: Market):
        self.t = t
        self.market = market
        self.nodes = t.sorted_nodes
        self.index = {v: i for i, v in enumerate(self.nodes)}
        counts = catalog.distinct_sets()
        if not counts:
            raise ValueError("catalog has no cut sets")
        self.sets = sorted(counts, key=lambda s: (len(s), s))
        self.weight = [counts[s] for s in self.sets]
        self.card = [len(s) for s in self.sets]
        self.lcm = math.lcm(*self.card)
        scale = math.lcm(*(c.denominator for c in market.costs), market.threshold.denominator)
        self.int_costs = [int(c * scale) for c in market.costs]
        self.int_budget = int(market.threshold * scale)

    def cost(self, a: Assignment) -> Fraction:
        return sum((self.market.costs[a[v]] for v in self.nodes), Fraction(0))

    def check_budget(self):
        if min(self.int_costs) * len(self.nodes) > self.int_budget:
            raise InfeasibleError(
                f"even the cheapest assignment costs {float(min(self.market.costs) * len(self.nodes)):.4f}"
                f" > threshold {float(self.market.threshold):.4f}"
            )

    def candidates(self) -> list[Fraction]:
        """Achievable minimum values, ascending, capped by a per-set upper bound."""
        m = self.market.m
        if m == 1 or min(self.card) == 1:
            return [Fraction(0)]
        cap = min(Fraction(min(m, c), c) for c in self.card)
        vals = {Fraction(0)}
        for c in set(self.card):
            vals.update(Fraction(a, c) for a in range(2, c + 1))
        return sorted(v for v in vals if v <= cap)

    def need(self, z: Fraction) -> list[int]:
        if z == 0:
            return [0] * len(self.sets)
        return [max(2, math.ceil(z * c)) for c in self.card]


def _build(p: _Problem, need: list[int], objective: bool):
    """Variables: y[v,k] (binary), u[j,k] in [0,1], and for phase 2 with a zero
    floor, d[j] (binary: set j is diverse) and q[j] (score numerator)."""
    V, m, J = len(p.nodes), p.market.m, len(p.sets)
    ny = V * m
    nu = J * m
    soft = [j for j in range(J) if objective and need[j] < 2 and p.card[j] >= 2]
    nd = len(soft)
    n = ny + nu + 2 * nd
    yi = lambda v, k: v * m + k
    ui = lambda j, k: ny + j * m + k
    di = {j: ny + nu + i for i, j in enumerate(soft)}
    qi = {j: ny + nu + nd + i for i, j in enumerate(soft)}

    rows = []
    lo, hi = [], []

    def add(coefs, lb, ub):
        rows.append(coefs)
        lo.append(lb)
        hi.append(ub)

    for v in range(V):
        add({yi(v, k): 1 for k in range(m)}, 1, 1)
    add({yi(v, k): p.int_costs[k] for v in range(V) for k in range(m)}, -np.inf, p.int_budget)
    # Scores ignore manufacturer identity, and handing the largest group to the
    # cheapest manufacturer never raises cost, so usage may be ordered by cost.
    by_cost = sorted(range(m), key=lambda k: (-p.int_costs[k], k))
    for k1, k2 in zip(by_cost, by_cost[1:]):
        coefs = {yi(v, k1): 1 for v in range(V)}
        coefs.update({yi(v, k2): -1 for v in range(V)})
        add(coefs, -np.inf, 0)
    for j, s in enumerate(p.sets):
        members = [p.index[x] for x in s]
        for k in range(m):
            coefs = {ui(j, k): 1}
            for v in members:
                coefs[yi(v, k)] = -1
            add(coefs, -np.inf, 0)
        if need[j] >= 2:
            add({ui(j, k): 1 for k in range(m)}, need[j], np.inf)
        if j in di:
            c = {ui(j, k): 1 for k in range(m)}
            c[di[j]] = -2
            add(c, 0, np.inf)
            c = {qi[j]: 1}
            c.update({ui(j, k): -1 for k in range(m)})
            add(c, -np.inf, 0)
            add({qi[j]: 1, di[j]: -p.card[j]}, -np.inf, 0)

    A = lil_array((len(rows), n))
    for r, coefs in enumerate(rows):
        for col, val in coefs.items():
            A[r, col] = val

    c = np.zeros(n)
    if objective:
        for j in range(J):
            w = p.weight[j] * (p.lcm // p.card[j])
            if j in qi:
                c[qi[j]] = -w
            elif need[j] >= 2:
                for k in range(m):
                    c[ui(j, k)] = -w
    integrality = np.zeros(n)
    integrality[:ny] = 1
    for j in di:
        integrality[di[j]] = 1
    ub = np.ones(n)
    for j in qi:
        ub[qi[j]] = p.card[j]
    return c, integrality, Bounds(np.zeros(n), ub), LinearConstraint(A.tocsr(), lo, hi), ny


def _run(p: _Problem, need, objective: bool, time_left: float):
    if any(nd > p.market.m for nd in need):
        return None, True
    c, integ, bounds, cons, ny = _build(p, need, objective)
    res = milp(c, integrality=integ, bounds=bounds, constraints=cons,
               options={"time_limit": max(time_left, 1.0), "mip_rel_gap": 0.0, "disp": False})
    proven = res.status in (0, 2)
    if res.x is None:
        return None, proven
    y = res.x[:ny].reshape(len(p.nodes), p.market.m)
    labels = {v: int(np.argmax(y[i])) for i, v in enumerate(p.nodes)}
    return Assignment(labels, p.market.m), res.status == 0


def solve(
    t: Topology,
    catalog: CutSetCatalog,
    market: Market,
    time_limit: float = DEFAULT_TIME_LIMIT,
) -> SolveResult:
    """Two-phase exact optimum; ``proof`` is False if the time limit cut a
    phase short, in which case the best assignment found so far is returned."""
    start = time.perf_counter()
    p = _Problem(t, catalog, market)
    p.check_budget()
    left = lambda: time_limit - (time.perf_counter() - start)
    proof = True

    # cheapest-everywhere is feasible and scores z = 0
    fallback = Assignment({v: min(range(market.m), key=lambda k: (market.costs[k], k)) for v in p.nodes},
                          market.m)
    cands = p.candidates()
    best, best_z = fallback, Fraction(0)
    lo, hi = 0, len(cands) - 1  # cands[lo] known feasible
    # the upper bound is often attainable; try it before bisecting
    probe = hi
    while lo < hi:
        if left() <= 0:
            proof = False
            break
        a, proven = _run(p, p.need(cands[probe]), False, left())
        if a is not None:
            best, best_z, lo = a, cands[probe], probe
        elif proven:
            hi = probe - 1
        else:
            proof = False
            break
        probe = (lo + hi + 1) // 2
    z = best_z
    log.info("phase 1: z=%s after %.2fs", z, time.perf_counter() - start)

    if left() > 0:
        a, optimal = _run(p, p.need(z), True, left())
        if a is not None:
            best = a
        proof = proof and optimal
    else:
        proof = False

    zmin, total = csc_objectives(catalog, best)
    if zmin < z:
        raise AssertionError(f"phase 2 lowered the minimum score: {zmin} < {z}")
    cost = p.cost(best)
    if cost > market.threshold:
        raise AssertionError("solver returned an over-budget assignment")
    return SolveResult(best, zmin, total, cost, proof, time.perf_counter() - start,
                       {"distinct_mcs": len(p.sets), "phase1_floor": z})


def brute_force_solve(
    t: Topology, catalog: CutSetCatalog, market: Market, limit: int = 10**7, chunk: int = 1 << 16
) -> SolveResult:
    """Exhaustive scan of every labelling; same lexicographic objective.

    Ties go to the first labelling in lexicographic order over sorted node IDs.
    """
    start = time.perf_counter()
    p = _Problem(t, catalog, market)
    V, m = len(p.nodes), market.m
    if m**V > limit:
        raise InstanceTooLarge(f"{m}^{V} assignments exceeds {limit}")
    p.check_budget()
    cols = [np.array([p.index[x] for x in s]) for s in p.sets]
    int_costs = np.array(p.int_costs)
    weights = np.array(p.weight)
    scale = np.array([p.lcm // c for c in p.card])

    best_key, best_row = None, None
    total = m**V
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total))
        # base-m digits, most significant first = first node in sorted order
        A = (idx[:, None] // (m ** np.arange(V - 1, -1, -1))[None, :]) % m
        ok = int_costs[A].sum(axis=1) <= p.int_budget
        if not ok.any():
            continue
        A = A[ok]
        distinct = np.zeros((len(A), len(cols)), dtype=np.int64)
        for j, cj in enumerate(cols):
            sub = A[:, cj]
            distinct[:, j] = sum((sub == k).any(axis=1) for k in range(m))
        scaled = np.where(distinct >= 2, distinct * scale, 0)
        mins = scaled.min(axis=1)
        sums = scaled @ weights
        top = mins.max()
        cand = np.flatnonzero(mins == top)
        r = cand[np.argmax(sums[cand])]
        key = (int(top), int(sums[r]))
        if best_key is None or key > best_key:
            best_key, best_row = key, A[r]
    labels = {v: int(best_row[i]) for i, v in enumerate(p.nodes)}
    a = Assignment(labels, m)
    zmin, tot = csc_objectives(catalog, a)
    return SolveResult(a, zmin, tot, p.cost(a), True, time.perf_counter() - start)
