"""Command line entry point: ``sovnet <subcommand>`` or ``python -m sovnet``.

Exit codes: 0 success, 2 configuration or input error, 3 infeasible cost
budget, 4 time limit reached (best assignment so far was written).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cutsets import build_catalog, catalog_stats
from .failures import full_sweep
from .optimizer import DEFAULT_TIME_LIMIT, InfeasibleError, solve
from .pipeline import ALL_STRATEGIES, ConfigError, RunConfig, market_for, resolve_topology, run_pipeline
from .scores import AssignmentError, DEFAULT_PSD_K, network_csc_score, network_psd_score
from .strategies import CENTRALITY_OF, StrategyKind, centrality_assignment, min_cutset_greedy, read_assignment
from .topology import TopologyError, all_pairs, enumerate_flows, serialize_topology

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_TIMEOUT = 0, 2, 3, 4

log = logging.getLogger("sovnet")


def _emit(path, text: str) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8", newline="\n")


def _topology(args):
    return resolve_topology(args.topology, getattr(args, "prune_degree_one", False))


def cmd_topo(args) -> int:
    t = _topology(args)
    flows = enumerate_flows(t)
    print(f"{t.name or args.topology}: {len(t.nodes)} nodes, {len(t.edges)} edges, {len(flows)} flows")
    if args.out:
        _emit(args.out, serialize_topology(t))
    return EXIT_OK


def cmd_mcs(args) -> int:
    t = _topology(args)
    catalog = build_catalog(t, max_cardinality=args.max_cardinality)
    _emit(args.out, catalog.to_json())
    stats = catalog_stats(catalog).as_dict()
    if args.stats:
        _emit(args.stats, json.dumps(stats, indent=1))
    width = max(len(k) for k in stats)
    for k, v in stats.items():
        print(f"{k:<{width}}  {v}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_assign(args) -> int:
    t = _topology(args)
    if args.strategy == "mcs-greedy":
        a = min_cutset_greedy(t, build_catalog(t), args.m)
    else:
        a = centrality_assignment(t, CENTRALITY_OF[StrategyKind(args.strategy)], args.m)
    _emit(args.out, a.to_csv(t.sorted_nodes))
    return EXIT_OK


def cmd_score(args) -> int:
    t = _topology(args)
    a = read_assignment(args.assignment, t, args.m)
    catalog = build_catalog(t)
    dist = network_csc_score(catalog, a)
    _emit(args.out, dist.to_json())
    if args.csv:
        _emit(args.csv, dist.to_csv())
    psd = network_psd_score(t, enumerate_flows(t), a, args.k)
    print(f"network PSD (k={args.k}): {float(psd):.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    t = _topology(args)
    cfg = RunConfig(topology=args.topology, costs=args.costs, threshold=args.threshold)
    res = solve(t, build_catalog(t), market_for(cfg, t, args.m), args.time_limit)
    _emit(args.out, res.to_json(t.sorted_nodes))
    if args.assignment_out:
        _emit(args.assignment_out, res.assignment.to_csv(t.sorted_nodes))
    log.info("solved in %.2fs: min=%s sum=%s optimal=%s", res.runtime, res.objective_min,
             res.objective_sum, res.proof)
    return EXIT_OK if res.proof else EXIT_TIMEOUT


def cmd_simulate(args) -> int:
    t = _topology(args)
    a = read_assignment(args.assignment, t, args.m)
    flows = all_pairs(t) if args.include_one_hop else enumerate_flows(t)
    report = full_sweep(t, flows, a, args.m, args.survivors_only)
    _emit(args.out, report.to_csv())
    if args.json:
        _emit(args.json, report.to_json())
    return EXIT_OK


def cmd_pipeline(args) -> int:
    cfg = RunConfig.from_json(Path(args.config).read_text("utf-8")) if args.config else RunConfig()
    overrides = {
        "topology": args.topology, "strategies": args.strategies, "m": args.m, "k": args.k,
        "costs": args.costs, "threshold": args.threshold, "output": args.out, "time_limit": args.time_limit,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if args.prune_degree_one:
        cfg.prune_degree_one = True
    if args.include_one_hop:
        cfg.include_one_hop_in_atta = True
    if args.survivors_only:
        cfg.atta_survivors_only = True
    if args.no_psd:
        cfg.psd = False
    for item in args.load or ():
        label, _, path = item.partition("=")
        if not path:
            raise ConfigError(f"--load expects LABEL=PATH, got {item!r}")
        cfg.loaded[label] = path
    rows, status = run_pipeline(cfg)
    for r in rows:
        print(f"{r['strategy']:>12} m={r['m']}  min={r['min_flow_csc']:.3f}  mean={r['mean_flow_csc']:.3f}")
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sovnet", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def topo_arg(sp):
        sp.add_argument("topology", help="SNDlib file or bundled name (polska, abilene, ...)")
        sp.add_argument("--prune-degree-one", action="store_true")

    sp = sub.add_parser("topo", help="parse and summarise a topology")
    topo_arg(sp)
    sp.add_argument("--out", help="write the normalised topology here")
    sp.set_defaults(func=cmd_topo)

    sp = sub.add_parser("mcs", help="enumerate minimal cut sets of every flow")
    topo_arg(sp)
    sp.add_argument("--out", default="-")
    sp.add_argument("--stats")
    sp.add_argument("--max-cardinality", type=int)
    sp.set_defaults(func=cmd_mcs)

    sp = sub.add_parser("assign", help="baseline assignment")
    topo_arg(sp)
    sp.add_argument("--strategy", choices=["nd", "bwc", "cc", "mcs-greedy"], required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_assign)

    sp = sub.add_parser("score", help="CSC and PSD scores of an assignment")
    topo_arg(sp)
    sp.add_argument("--assignment", required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-k", type=int, default=DEFAULT_PSD_K)
    sp.add_argument("--out", default="-")
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_score)

    sp = sub.add_parser("solve", help="exact CSC-maximising assignment")
    topo_arg(sp)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--costs", type=float, nargs="+")
    sp.add_argument("--threshold", type=float)
    sp.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    sp.add_argument("--out", default="-")
    sp.add_argument("--assignment-out")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("simulate", help="ATTA under every manufacturer-failure combination")
    topo_arg(sp)
    sp.add_argument("--assignment", required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--include-one-hop", action="store_true")
    sp.add_argument("--survivors-only", action="store_true",
                    help="drop flows with a failed endpoint from the denominator")
    sp.add_argument("--out", default="-")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("pipeline", help="all strategies x manufacturer counts")
    sp.add_argument("--config", help="JSON RunConfig; flags override its fields")
    sp.add_argument("--topology")
    sp.add_argument("--strategies", nargs="+", choices=ALL_STRATEGIES)
    sp.add_argument("-m", type=int, nargs="+")
    sp.add_argument("-k", type=int)
    sp.add_argument("--costs", type=float, nargs="+")
    sp.add_argument("--threshold", type=float)
    sp.add_argument("--time-limit", type=float)
    sp.add_argument("--out")
    sp.add_argument("--load", action="append", metavar="LABEL=PATH",
                    help="external assignment CSV; '{m}' in PATH expands to the manufacturer count")
    sp.add_argument("--prune-degree-one", action="store_true")
    sp.add_argument("--include-one-hop", action="store_true")
    sp.add_argument("--survivors-only", action="store_true")
    sp.add_argument("--no-psd", action="store_true")
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as e:
        print(f"sovnet: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ConfigError, TopologyError, AssignmentError, OSError, ValueError, KeyError) as e:
        print(f"sovnet: error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
