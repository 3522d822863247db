"""
Availability hides vendor lock-in
=================================

Series/parallel block diagram of the DCN flow. One manufacturer at 0.999
looks better than four mixed ones, yet a single vendor failure takes it all
down.
"""

# %%
from sovnet.rbd import Leaf, Parallel, Series, eval_rbd, load_bundled

print(f"one manufacturer  A_f = {eval_rbd(load_bundled('fig1-rbd-single')):.4f}")
print(f"four manufacturers A_f = {eval_rbd(load_bundled('fig1-rbd-multi')):.4f}")

# %%
# Blocks compose by hand too.
pair = Parallel((Leaf("x", 0.99), Leaf("y", 0.95)))
print(eval_rbd(Series((Leaf("in", 0.999), pair, Leaf("out", 0.999)))))
