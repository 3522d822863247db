"""
Cut sets and CSC scores on a small data-centre network
=======================================================

A 12-node two-tier DCN, four manufacturers, one flow from T_0 to T_1.
"""

# %%
from fractions import Fraction
from importlib import resources

from sovnet.cutsets import enumerate_mcs
from sovnet.scores import flow_csc_score, flow_psd_score, mcs_csc_score
from sovnet.strategies import load_assignment
from sovnet.topology import Flow, k_shortest_paths, load_bundled

dcn = load_bundled("fig1-dcn")
flow = Flow("T_0", "T_1")
colours = ["yellow", "green", "blue", "pink"]
coloring = load_assignment(
    resources.files("sovnet.data").joinpath("fig1-coloring.csv").read_text("utf-8"), dcn, 4
)

# %%
# Every minimal set of intermediate nodes whose loss cuts the flow.
for mcs in enumerate_mcs(dcn, flow):
    makers = sorted({colours[coloring[v]] for v in mcs})
    print(f"{', '.join(mcs.key):<24} {str(mcs_csc_score(mcs, coloring)):>4}  {makers}")

# %%
# The flow is only as diverse as its weakest cut set.
print("Flow-CSC:", flow_csc_score(enumerate_mcs(dcn, flow), coloring))

# %%
# PSD looks at paths instead. It scores this flow highly even though two
# cut sets share a manufacturer.
for p in k_shortest_paths(dcn, flow, 10):
    print("-".join(p), sorted({colours[coloring[v]] for v in p[1:-1]}))
print("Flow-PSD:", flow_psd_score(dcn, flow, coloring), "=", float(flow_psd_score(dcn, flow, coloring)))
assert flow_psd_score(dcn, flow, coloring) == Fraction(17, 6)
