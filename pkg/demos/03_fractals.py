"""
Attractors, addresses and dimension
===================================

Load a graph-directed system, iterate it to a certified resolution, and
compare the dimension with the Perron root of the Mauldin matrix.
"""

from pathlib import Path

import numpy as np

from mwalgebra import ifs, render
from mwalgebra.config import load_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

sys = load_config(CONFIGS / "two_vertex.toml").system
print(ifs.validate_system(sys))

# points within eps of the invariant sets
approx = ifs.attractor(sys, 1e-3)
for v, pts in approx.points.items():
    print(v, len(pts), "points, radius", approx.radius)

# the attractor reproduces itself under the maps
print(ifs.self_similarity_gap(sys, approx))

# dimension: the s where the spectral radius of A(s) crosses 1
s = ifs.dimension(sys)
print("dimension", s)
print("eigenvalues at s:", np.linalg.eigvals(ifs.mauldin_matrix(sys, s)))

# the address of f1 f2 g2 ..., read to depth 25
point, radius = ifs.code(sys, sys.graph.path("f1", "f2", "g2"), 25)
print(point, radius)

# the plane-filling pinwheel and its picture
pin = load_config(CONFIGS / "pinwheel.toml").system
print("pinwheel dimension", ifs.dimension(pin), ifs.check_surjectivity(pin, 0.02).passed)
img = render.raster(pin, ifs.attractor(pin, 0.01).points, 128, 128)
print("ink fraction", float((img == 0).mean()))
