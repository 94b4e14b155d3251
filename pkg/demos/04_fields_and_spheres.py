"""
Coefficients matter only with torsion
=====================================

The hollow tetrahedron is a 2-sphere: one component, no loops, one cavity,
whatever the field. The six-vertex projective plane has 2-torsion in its
first homology, so its Betti numbers over F_2 and over F_3 differ.
"""

from itertools import combinations

import vrpersist as vp


def closure(tops):
    return {f for t in tops for k in range(1, len(t) + 1) for f in combinations(t, k)}


sphere = vp.Filtration.from_simplices(closure(combinations(range(4), 3)))
rp2 = vp.Filtration.from_simplices(closure([
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]))

for name, filt in [("sphere", sphere), ("projective plane", rp2)]:
    for p in (2, 3, 5):
        fast = vp.betti_numbers(filt, None, p, up_to_dim=2)
        dense = vp.bruteforce_betti_oracle(filt, None, p)
        print(f"{name:17s} F_{p}: {fast}  (dense check {dense})")
