# Checking the annealer against exhaustive search
#
# For small graphs the balanced optimum can be enumerated. Count how often the
# best of 20 anneals hits it.

import numpy as np

from isingpart.anneal import default_params_for, anneal
from isingpart.evaluate import brute_force_balanced_mincut
from isingpart.graph import Graph
from isingpart.ising import MinCutProblem

rng = np.random.default_rng(0)


def random_graph(n, p):
    u, v = np.triu_indices(n, k=1)
    keep = rng.random(u.size) < p
    return Graph(n, u[keep], v[keep], np.ones(keep.sum(), dtype=np.int64))


hits = 0
for trial in range(20):
    n = int(rng.integers(8, 17))
    g = random_graph(n, 0.3)
    optimum, witness = brute_force_balanced_mincut(g)
    problem = MinCutProblem.for_graph(g)
    best = min((t.imbalance[-1] > n % 2, t.cut[-1])
               for t in (anneal(problem, default_params_for("gdi", seed=s, sweeps=500))[1] for s in range(20)))
    hits += (not best[0]) and best[1] == optimum
    print("n=%2d  m=%3d  oracle %3d  annealer %3d" % (n, g.num_edges, optimum, best[1]))
print("hit the optimum on %d of 20 graphs" % hits)

# The witness is the lexicographically smallest optimal state with node 0 at +1
print(brute_force_balanced_mincut(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])))
