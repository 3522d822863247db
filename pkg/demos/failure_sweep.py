"""
What survives when whole manufacturers go dark
===============================================

Fail every non-empty proper subset of five manufacturers on Polska and count
the flows that still route.
"""

# %%
from sovnet.cutsets import build_catalog
from sovnet.failures import full_sweep
from sovnet.optimizer import default_market, solve
from sovnet.strategies import CENTRALITY_OF, StrategyKind, centrality_assignment
from sovnet.topology import enumerate_flows, load_bundled

polska = load_bundled("polska")
flows = enumerate_flows(polska)
m = 5
opt = solve(polska, build_catalog(polska), default_market(polska, m)).assignment
bwc = centrality_assignment(polska, CENTRALITY_OF[StrategyKind.CENTRALITY_BWC], m)

# %%
# By default a flow whose endpoint failed is lost. The second view only asks
# whether surviving endpoints can still reach each other.
for survivors_only in (False, True):
    print("survivor denominator" if survivors_only else "fixed denominator")
    for label, a in (("csc-opt", opt), ("bwc", bwc)):
        rep = full_sweep(polska, flows, a, m, survivors_only)
        worst = "  ".join(f"{g}:{float(rep.worst(g)):.3f}" for g in rep.groups)
        print(f"  {label:>8} worst per failure count  {worst}")

# %%
# Grouped and sorted, as for a descending-curve plot.
for g, rows in full_sweep(polska, flows, opt, m).groups.items():
    print(g, " ".join(f"{float(x):.2f}" for _, x in rows))
