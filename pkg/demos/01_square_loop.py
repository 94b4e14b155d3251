"""
A loop in four points
=====================

Four corners of the unit square are the smallest point cloud with a hole.
The hole appears when the four sides enter the Rips complex at scale 1 and
is filled when the diagonals and triangles enter at sqrt(2).
"""

import numpy as np

import vrpersist as vp

# %%
# Distances and the filtration
points = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
dm = vp.pairwise_distances(vp.PointCloud(points))
filt = vp.build_vr_filtration(dm, max_dim=2)
for s in filt:
    print(f"{s.value:8.4f}  dim {s.dim}  {s.vertices}")

# %%
# Each distinct scale gives one complex of the nested sequence
for eps in filt.scales:
    n = vp.complex_at(filt, eps)
    print(f"eps={eps:.4f}: {n:2d} simplices, betti {vp.betti_numbers(filt, n, 2, up_to_dim=1)}")

# %%
# Reduction pairs, mapped to scales. Zero-length pairs are structural.
pairs = vp.pairs_to_scales(vp.reduction(filt), filt)
for q in pairs:
    tag = " (zero persistence)" if q.zero_persistence else ""
    print(f"H{q.dim}: [{q.birth:.4f}, {q.death:.4f}){tag}")

# %%
# The diagram merges coincident points; three components die together at 1
for q in vp.build_diagram(pairs).points:
    print(f"H{q.dim} ({q.birth:.4f}, {q.death:.4f}) x{q.multiplicity}")
