import math
import sys
from itertools import combinations

import numpy as np
import pytest

from vrpersist import Filtration, PointCloud

SQRT2 = math.sqrt(2.0)


def square_points():
    return np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def circle_points(n=20):
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(t), np.sin(t)])


def tetrahedron_boundary():
    """4 vertices, 6 edges, 4 triangles, all at scale 0."""
    simplices = [s for k in (1, 2, 3) for s in combinations(range(4), k)]
    return Filtration.from_simplices(simplices)


def random_cloud(rng, max_points=8):
    m = int(rng.integers(1, max_points + 1))
    dim = int(rng.integers(2, 4))
    return PointCloud(rng.random((m, dim)))


# --- independent oracles ----------------------------------------------------

def scalar_distance(a, b, metric="euclidean"):
    diffs = [abs(x - y) for x, y in zip(a, b)]
    if metric == "euclidean":
        return math.sqrt(sum(d * d for d in diffs))
    if metric == "manhattan":
        return sum(diffs)
    return max(diffs)


def vr_subsets(dist, max_dim, max_eps=math.inf):
    """Every vertex subset of size <= max_dim+1 whose diameter is <= max_eps."""
    m = len(dist)
    out = {}
    for size in range(1, max_dim + 2):
        for verts in combinations(range(m), size):
            diam = max((dist[i][j] for i, j in combinations(verts, 2)), default=0.0)
            if diam <= max_eps:
                out[verts] = diam
    return out


def components(n_vertices, edges):
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n_vertices)})


@pytest.fixture
def square():
    return PointCloud(square_points())


@pytest.fixture
def circle():
    return PointCloud(circle_points())


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.format_results(sorted(mod.RESULTS)):
        terminalreporter.write_line(line)
