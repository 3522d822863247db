"""End-to-end evaluation: assignments per strategy and manufacturer count,
their CSC/PSD scores, failure sweeps, and a comparison table.

Artifacts are plain CSV/JSON written by a single writer; apart from the log
they are byte-identical across runs with the same configuration.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from .cutsets import build_catalog, catalog_stats
from .failures import full_sweep
from .optimizer import DEFAULT_TIME_LIMIT, Market, default_market, solve
from .scores import DEFAULT_PSD_K, network_csc_score, network_psd_score
from .strategies import (
    CENTRALITY_OF,
    StrategyKind,
    centrality_assignment,
    min_cutset_greedy,
    read_assignment,
    warn_if_over_budget,
)
from .topology import BUNDLED, all_pairs, enumerate_flows, load_bundled, prune_degree_one, read_topology

log = logging.getLogger(__name__)

ALL_STRATEGIES = ("csc-opt", "nd", "bwc", "cc", "mcs-greedy")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    topology: str = ""
    strategies: list[str] = field(default_factory=lambda: list(ALL_STRATEGIES))
    m: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    k: int = DEFAULT_PSD_K
    costs: list[float] | None = None
    threshold: float | None = None
    prune_degree_one: bool = False
    include_one_hop_in_atta: bool = False
    atta_survivors_only: bool = False
    output: str = "results"
    time_limit: float = DEFAULT_TIME_LIMIT
    # label -> CSV path; "{m}" in the path is replaced by the manufacturer count
    loaded: dict[str, str] = field(default_factory=dict)
    psd: bool = True

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        doc = json.loads(text)
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    def validate(self) -> None:
        if not self.topology:
            raise ConfigError("no topology given")
        if not self.m or any(x < 1 for x in self.m):
            raise ConfigError("manufacturer counts must be >= 1")
        for s in self.strategies:
            if s not in ALL_STRATEGIES:
                raise ConfigError(f"unknown strategy {s!r}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")


def resolve_topology(source: str, prune: bool = False):
    """A path to an SNDlib file, or the name of a bundled topology."""
    if os.path.exists(source):
        t = read_topology(source)
    elif source in BUNDLED:
        t = load_bundled(source)
    else:
        raise ConfigError(f"topology {source!r} is neither a file nor a bundled name {BUNDLED}")
    return prune_degree_one(t) if prune else t


def market_for(cfg: RunConfig, t, m: int) -> Market:
    base = default_market(t, m)
    costs = cfg.costs[:m] if cfg.costs else base.costs
    if len(costs) != m:
        raise ConfigError(f"{len(costs)} costs configured for m={m}")
    return Market(m, costs, cfg.threshold if cfg.threshold is not None else base.threshold)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


SUMMARY_FIELDS = ["strategy", "m", "min_flow_csc", "mean_flow_csc", "median_flow_csc",
                  "network_psd", "cost", "over_budget", "fully_sovereign"]


def run_pipeline(cfg: RunConfig) -> tuple[list[dict], int]:
    """Run every (strategy, m) combination; returns summary rows and an exit
    status (0, or 4 if a solve hit its time limit)."""
    cfg.validate()
    t = resolve_topology(cfg.topology, cfg.prune_degree_one)
    out = Path(cfg.output)
    flows = enumerate_flows(t)
    atta_flows = all_pairs(t) if cfg.include_one_hop_in_atta else flows
    catalog = build_catalog(t, flows)
    _write(out / "catalog.json", catalog.to_json())
    _write(out / "catalog_stats.json", json.dumps(catalog_stats(catalog).as_dict(), indent=1))
    log.info("%s: %d nodes, %d flows, %d MCS", t.name, len(t.nodes), len(flows),
             sum(len(s) for _, s in catalog))

    labels = list(cfg.strategies) + sorted(cfg.loaded)
    rows, status = [], 0
    max_groups = max(cfg.m) - 1
    for m in cfg.m:
        market = market_for(cfg, t, m)
        for label in labels:
            if label == "csc-opt":
                res = solve(t, catalog, market, cfg.time_limit)
                log.info("csc-opt m=%d: z=%s in %.1fs (optimal=%s)", m, res.objective_min, res.runtime, res.proof)
                if not res.proof:
                    status = 4
                a = res.assignment
            elif label == "mcs-greedy":
                a = min_cutset_greedy(t, catalog, m)
            elif label in cfg.loaded:
                a = read_assignment(cfg.loaded[label].replace("{m}", str(m)), t, m)
            else:
                a = centrality_assignment(t, CENTRALITY_OF[StrategyKind(label)], m)
            if label != "csc-opt":
                warn_if_over_budget(a, market)
            stem = out / f"m{m}" / label
            _write(stem / "assignment.csv", a.to_csv(t.sorted_nodes))
            dist = network_csc_score(catalog, a)
            _write(stem / "flow_csc.json", dist.to_json())
            _write(stem / "flow_csc.csv", dist.to_csv())
            row = {
                "strategy": label,
                "m": m,
                "min_flow_csc": float(dist.min),
                "mean_flow_csc": float(dist.mean),
                "median_flow_csc": float(dist.quartiles[1]),
                "network_psd": float(network_psd_score(t, flows, a, cfg.k)) if cfg.psd else "",
                "cost": float(sum(market.costs[x] for x in a.values())),
                "over_budget": sum(market.costs[x] for x in a.values()) > market.threshold,
            }
            if m >= 2:
                report = full_sweep(t, atta_flows, a, m, cfg.atta_survivors_only)
                _write(stem / "atta.csv", report.to_csv())
                _write(stem / "atta.json", report.to_json())
                row["fully_sovereign"] = report.fully_sovereign
                for g in range(1, m):
                    row[f"worst_atta_{g}"] = float(report.worst(g))
            else:
                row["fully_sovereign"] = ""
            rows.append(row)

    fields = SUMMARY_FIELDS + [f"worst_atta_{g}" for g in range(1, max_groups + 1)]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in r.items()})
    _write(out / "summary.csv", buf.getvalue())
    return rows, status
