# Partitioning a single graph
#
# Build a 1000-node random graph with the same size as G47, anneal it with the
# gdi strategy and look at what comes back.

import numpy as np

from isingpart import gset
from isingpart.anneal import anneal, default_params_for
from isingpart.evaluate import cut_value, imbalance
from isingpart.ising import MinCutProblem

g = gset.surrogate("G47")
print(g)

# Default coefficients: A = B * mean|w| / 4
problem = MinCutProblem.for_graph(g)
print("A =", problem.coeff_a, " B =", problem.coeff_b)

params = default_params_for("gdi", seed=7)
spins, trace = anneal(problem, params)

print("cut       ", cut_value(g, spins))
print("imbalance ", imbalance(spins))
print("sweeps    ", len(trace), " total time %.2fs" % trace.elapsed[-1])

# The trace has one row per sweep. Cut drops quickly and then crawls.
for k in [0, 9, 99, 499, 999]:
    print("sweep %4d  cut %5d  imbalance %2d  P_f %.2e" % (k, trace.cut[k], trace.imbalance[k],
                                                            trace.flip_probability[k]))

# Best of a handful of seeds, balance first
results = []
for seed in range(5):
    _, t = anneal(problem, default_params_for("gdi", seed=seed))
    results.append((int(t.imbalance[-1]), int(t.cut[-1]), seed))
print("best of 5 (imbalance, cut, seed):", min(results))
print("spread of cuts:", np.ptp([r[1] for r in results]))
