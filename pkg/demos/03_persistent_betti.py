"""
Persistent Betti numbers two ways
=================================

The number of k-dimensional classes of K_i still alive in K_{i+p} can be read
off the reduction pairs, or computed from scratch with dense rank
arithmetic on the boundary blocks of the two complexes. This script tabulates
both for a small random cloud and checks they agree.
"""

import numpy as np

import vrpersist as vp

rng = np.random.default_rng(3)
filt = vp.build_vr_filtration(vp.pairwise_distances(vp.PointCloud(rng.random((7, 2)))), max_dim=2)
scales = filt.scales
print(f"{len(filt)} simplices over {len(scales)} scales")

# %%
# Rows: start scale i. Columns: window length p. Entries: beta_1^{i,p}.
for i in range(len(scales)):
    row = [vp.persistent_betti(filt, i, p, 2, k=1) for p in range(len(scales) - i)]
    check = [vp.persistent_betti(filt, i, p, 2, k=1, method="rank") for p in range(len(scales) - i)]
    assert row == check
    print(f"i={i:2d} eps={scales[i]:.3f} ", " ".join(map(str, row)))
