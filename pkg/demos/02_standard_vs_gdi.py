# Standard vs gdi sweep cost
#
# The standard update re-sums every spin to get the balance term, so one sweep
# is O(N^2). gdi reads a shared counter instead. Watch the gap grow with N.

import numpy as np

from isingpart import gset
from isingpart.anneal import AnnealParams, anneal
from isingpart.ising import MinCutProblem

print("%-6s %6s %12s %12s %8s" % ("graph", "N", "standard", "gdi", "ratio"))
for gid in ["G43", "G22", "G55", "G60", "G70"]:
    g = gset.surrogate(gid)
    problem = MinCutProblem.for_graph(g)
    t = {}
    for strategy in ["standard", "gdi"]:
        anneal(problem, AnnealParams(sweeps=1, strategy=strategy))  # compile / warm up
        _, trace = anneal(problem, AnnealParams(sweeps=10, strategy=strategy, seed=1))
        t[strategy] = np.median(trace.sweep_seconds)
    print("%-6s %6d %10.2fms %10.2fms %7.1fx" % (gid, g.num_nodes, 1e3 * t["standard"], 1e3 * t["gdi"],
                                                t["standard"] / t["gdi"]))

# With one worker and the same seed both strategies make exactly the same
# decisions, they only differ in how the balance term is obtained.
g = gset.random_graph(300, 1500, seed=2)
problem = MinCutProblem.for_graph(g)
a, _ = anneal(problem, AnnealParams(sweeps=200, strategy="standard", deterministic=True, seed=3))
b, _ = anneal(problem, AnnealParams(sweeps=200, strategy="gdi", deterministic=True, seed=3))
print("identical final states:", np.array_equal(a, b))
