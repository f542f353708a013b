"""Fill a CVT-MAP-Elites archive on the 2-D rastrigin and watch coverage grow.

Run with:  python3 demos/01_map_elites_archive.py
"""

import numpy as np

from qdela import OperatorConfig, Rng, compute_centroids, make_problem, run_map_elites

problem = make_problem("rastrigin", "subset", dim=2, config_rng=Rng(42))
centroids = compute_centroids(100, Rng(42).derive("centroids"))

checkpoints = [100, 500, 1000, 5000, 10000]
snapshots = run_map_elites(
    problem,
    centroids,
    OperatorConfig(kind="isolinedd"),
    budget=10_000,
    batch=100,
    checkpoints=checkpoints,
    rng=Rng(7),
)

print("evals  occupied  best_fitness  mean_fitness")
for evals, archive in snapshots:
    elites = [c for c in archive.cells if c is not None]
    fits = np.array([e.fitness for e in elites])
    print(f"{evals:>5}  {len(elites):>8}  {fits.max():>12.4f}  {fits.mean():>12.4f}")

# the archive holds one elite per behaviour-space cell; because rastrigin
# fitness is maximised at the origin, the best elite genotype should be
# close to zero
_, final = snapshots[-1]
best = max((c for c in final.cells if c is not None), key=lambda s: s.fitness)
print("\nbest genotype:", np.round(best.genotype, 4))
