"""
Exact assignment versus centrality heuristics on Polska
========================================================

Solve for the best manufacturer placement at each market size and compare its
Flow-CSC distribution with the round-robin baselines.
"""

# %%
from sovnet.cutsets import build_catalog, catalog_stats
from sovnet.optimizer import default_market, solve
from sovnet.scores import network_csc_score
from sovnet.strategies import CENTRALITY_OF, centrality_assignment, min_cutset_greedy
from sovnet.topology import load_bundled

polska = load_bundled("polska")
catalog = build_catalog(polska)
stats = catalog_stats(catalog)
print(f"{len(catalog)} flows, {stats.total} cut sets, mean size {stats.mean_cardinality:.2f}")
print("distinct cut sets by size:", stats.distinct_histogram)

# %%
print(f"{'m':>2} {'strategy':>11} {'min':>6} {'q1':>6} {'median':>6} {'mean':>6}")
for m in (2, 3, 4, 5):
    res = solve(polska, catalog, default_market(polska, m))
    rows = {"csc-opt": res.assignment, "mcs-greedy": min_cutset_greedy(polska, catalog, m)}
    rows.update({k.value: centrality_assignment(polska, CENTRALITY_OF[k], m) for k in CENTRALITY_OF})
    for label, a in rows.items():
        s = network_csc_score(catalog, a).summary()
        print(f"{m:>2} {label:>11} {s['min']:6.3f} {s['q1']:6.3f} {s['median']:6.3f} {s['mean']:6.3f}")
    print(f"   solved in {res.runtime:.2f} s, cost {float(res.total_cost):.3f}"
          f" of {float(default_market(polska, m).threshold):.3f}")
