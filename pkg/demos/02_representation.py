"""
The correspondence and its Toeplitz representation
==================================================

Random bimodule data on a random graph, pushed through (psi, pi) and checked
exactly; then the same identities on a fractal, where sampling at depth n
leaves a residual that shrinks like the contraction ratio.
"""

import random
from pathlib import Path

from mwalgebra import suites
from mwalgebra.config import load_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
from mwalgebra.correspondence import AElement, CorrVector, GeoFn, toeplitz_residual_geo
from mwalgebra.sampling import random_graph

rng = random.Random(3)
g = random_graph(rng)
print(g)

# each battery returns {name: [passed, total]}
print(suites.toeplitz_suite(g, rng, 200))
print(suites.covariance_suite(g, rng, 200))
print(suites.generator_coverage(g))

# the middle-thirds system, with a(x) = x
cfg = load_config(CONFIGS / "cantor.toml")
sys, cg = cfg.system, cfg.graph
a = AElement(cg, {"v": GeoFn(lambda x: x[:, 0])}, sys)
xi = CorrVector(cg, {"e1": 1, "e2": 1}, sys)

prev = None
for n in range(2, 9):
    r = toeplitz_residual_geo(xi, xi, a, n)
    note = "" if prev is None else f"  ratio {r / prev:.4f}"
    print(f"depth {n}: residual {r:.3e}{note}")
    prev = r
