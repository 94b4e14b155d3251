"""
Barcode of a noisy circle
=========================

Points sampled around a circle have one long-lived 1-dimensional class.
Noise adds short bars that sit close to the diagonal of the diagram.
The barcode and diagram are written as SVG files next to this script.
"""

from pathlib import Path

import numpy as np

import vrpersist as vp
from vrpersist.svg import render

rng = np.random.default_rng(0)
t = rng.uniform(0, 2 * np.pi, 40)
points = np.column_stack([np.cos(t), np.sin(t)]) + rng.normal(scale=0.05, size=(40, 2))

pairs = vp.vr_persistence(vp.pairwise_distances(vp.PointCloud(points)), max_dim=2)
pairs = [q for q in pairs if not q.zero_persistence]

# %%
# The loop stands out by persistence
for q in vp.top_features(pairs, 4):
    print(f"H{q.dim}: birth {q.birth:.3f} death {q.death:.3f} persistence {q.persistence:.3f}")

# %%
out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)
(out / "circle_barcode.svg").write_text(render(pairs, "barcode"))
(out / "circle_diagram.svg").write_text(render(pairs, "diagram"))
(out / "circle_pairs.json").write_text(vp.dumps_pairs(pairs))
print("wrote", *sorted(p.name for p in out.glob("circle_*")))
