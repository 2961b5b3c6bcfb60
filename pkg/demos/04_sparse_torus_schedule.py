# Sparse tori need a longer schedule
#
# A 20 x 100 torus (the shape of G32) has an optimal balanced cut of 40 edges:
# two straight seams across the short side. The default 1000-sweep schedule
# leaves wiggly seams behind. Stretch it and the seams straighten out.

from isingpart import gset
from isingpart.anneal import anneal, decay_for, default_params_for
from isingpart.ising import MinCutProblem

g = gset.toroidal_grid(20, 100)
problem = MinCutProblem.for_graph(g)

for sweeps in [1000, 5000, 20000]:
    decay = 0.99 if sweeps == 1000 else decay_for(sweeps, 0.04, 1e-4)
    cuts = []
    for seed in range(4):
        _, t = anneal(problem, default_params_for("gdi", seed=seed, sweeps=sweeps, decay_rate=decay))
        cuts.append(int(t.cut[-1]) if t.imbalance[-1] == 0 else None)
    print("%5d sweeps, decay %.5f: cuts %s" % (sweeps, decay, cuts))
