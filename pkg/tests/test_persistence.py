import math
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import SQRT2, square_points
from vrpersist import (Barcode, DistanceMatrix, Filtration, PersistencePair, PointCloud,
                       build_diagram, build_vr_filtration, dumps_pairs, loads_pairs,
                       pairs_to_scales, pairwise_distances, reduction, top_features,
                       vr_persistence)
from vrpersist.persistence import PairsFormatError, format_number

INF = math.inf


def square_pairs():
    return vr_persistence(pairwise_distances(PointCloud(square_points())), 2)


def test_pair_invariants():
    q = PersistencePair(1, 0.5, 2.0)
    assert q.persistence == 1.5 and not q.essential
    e = PersistencePair(0, 0.0)
    assert e.essential and e.persistence == INF
    with pytest.raises(ValueError):
        PersistencePair(0, 2.0, 1.0)


def test_square_pairs():
    pairs = square_pairs()
    assert [q for q in pairs if q.dim == 0] == [PersistencePair(0, 0.0, 1.0)] * 3 + [PersistencePair(0, 0.0)]
    dim1 = [q for q in pairs if q.dim == 1 and not q.zero_persistence]
    assert len(dim1) == 1
    assert dim1[0].birth == 1.0 and dim1[0].death == pytest.approx(SQRT2, abs=1e-12)
    # zero-length pairs stay in the raw output; dim-2 classes of a capped build do not
    assert any(q.zero_persistence for q in pairs)
    assert all(q.dim < 2 for q in pairs)


def test_single_vertex():
    f = build_vr_filtration(DistanceMatrix(np.zeros((1, 1))), 1)
    assert pairs_to_scales(reduction(f), f) == [PersistencePair(0, 0.0)]


def test_filled_triangle_at_one_scale():
    simplices = [c for k in (1, 2, 3) for c in combinations(range(3), k)]
    f = Filtration.from_simplices(simplices)
    assert len(f) == 7
    pairs = pairs_to_scales(reduction(f), f)
    finite = [q for q in pairs if not q.essential]
    assert finite and all(q.zero_persistence for q in finite)
    assert [q for q in pairs if q.essential] == [PersistencePair(0, 0.0)]


def test_index_level_pairs():
    f = build_vr_filtration(pairwise_distances(PointCloud(square_points())), 2)
    pairs = pairs_to_scales(reduction(f), f, index_level=True)
    dim1 = [q for q in pairs if q.dim == 1 and not q.zero_persistence]
    assert dim1 == [PersistencePair(1, 2.0, 3.0)]


def test_diagram_multiplicity():
    d = build_diagram([PersistencePair(1, 1.0, 2.0)] * 2)
    assert len(d.points) == 1
    q = d.points[0]
    assert (q.birth, q.death, q.dim, q.multiplicity) == (1.0, 2.0, 1, 2)


def test_empty_diagram():
    assert build_diagram([]).points == ()


def test_square_diagram():
    d = build_diagram(square_pairs())
    got = {(q.dim, q.birth, q.death): q.multiplicity for q in d.points}
    assert got == {(0, 0.0, 1.0): 3, (0, 0.0, INF): 1, (1, 1.0, SQRT2): 1}
    kept = build_diagram(square_pairs(), drop_zero=False)
    assert kept.total(1) == 3


def test_infinity_cap():
    pairs = square_pairs()
    assert build_diagram(pairs, infinity_cap=2.0).infinity_cap == 2.0
    with pytest.raises(ValueError):
        build_diagram(pairs, infinity_cap=1.2)


def test_top_features():
    pairs = square_pairs()
    assert top_features(pairs, 1) == [PersistencePair(0, 0.0)]
    # sqrt2 - 1 < 1, so a (0, 1) component beats the loop
    assert top_features(pairs, 2)[1] == PersistencePair(0, 0.0, 1.0)
    assert top_features(pairs, 0) == []
    assert top_features(pairs, 5)[4].dim == 1


def test_barcode_order():
    bc = Barcode.from_pairs(reversed(square_pairs()))
    assert list(bc.bars) == sorted(bc.bars)
    assert bc.dims == [0, 1] and len(bc.dimension(0)) == 4


def test_format_number():
    assert format_number(1.0) == "1.0"
    assert format_number(SQRT2) == "1.41421356237"
    assert format_number(1e-20) == "1e-20"
    assert format_number(123456789012345.0) == "1.23456789012e+14"


def test_pairs_text_schema():
    text = dumps_pairs(square_pairs())
    assert '{"dim": 0, "birth": 0.0, "death": null}' in text
    assert '{"dim": 1, "birth": 1.0, "death": 1.41421356237}' in text
    assert dumps_pairs([]) == "[]\n"


def test_pairs_roundtrip():
    pairs = square_pairs()
    text = dumps_pairs(pairs)
    back = loads_pairs(text)
    assert dumps_pairs(back) == text
    assert Counter((q.dim, q.essential) for q in back) == Counter((q.dim, q.essential) for q in pairs)
    for a, b in zip(sorted(back), sorted(pairs)):
        assert a.dim == b.dim and a.birth == pytest.approx(b.birth, rel=1e-11)
        assert a.death == pytest.approx(b.death, rel=1e-11)


@pytest.mark.parametrize("bad", ["{", "{}", '[{"dim": 0}]', '[{"dim": 0.5, "birth": 0, "death": 1}]',
                                 '[{"dim": 0, "birth": 2, "death": 1}]',
                                 '[{"dim": 0, "birth": "a", "death": 1}]'])
def test_pairs_malformed(bad):
    with pytest.raises(PairsFormatError):
        loads_pairs(bad)


def test_diagram_counts_match_bars(rng):
    for _ in range(20):
        pts = rng.random((int(rng.integers(1, 9)), 2))
        pairs = vr_persistence(pairwise_distances(PointCloud(pts)), 2)
        d = build_diagram(pairs)
        for k in (0, 1):
            assert d.total(k) == sum(1 for q in pairs if q.dim == k and q.birth < q.death)
        assert all(q.birth < q.death for q in d.points)
        assert len({(q.birth, q.death, q.dim) for q in d.points}) == len(d.points)
        assert all(q.persistence >= 0 for q in pairs)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(lambda m: st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)),
                                                     min_size=m, max_size=m)),
       st.floats(0.01, 100))
def test_scaling_is_homogeneous(points, c):
    dm = pairwise_distances(PointCloud(np.array(points)))
    f1 = build_vr_filtration(dm, 2)
    f2 = build_vr_filtration(DistanceMatrix(dm.values * c), 2)
    # rounding may merge two nearby values into a tie, which reorders simplices
    assume(len(f1.scales) == len(f2.scales))
    r1, r2 = reduction(f1), reduction(f2)
    # scaling preserves the value order, so the index-level pairing survives
    assert [s.vertices for s in f1] == [s.vertices for s in f2]
    assert r1.pairs == r2.pairs and r1.essential == r2.essential
    for a, b in zip(pairs_to_scales(r1, f1), pairs_to_scales(r2, f2)):
        assert b.birth == pytest.approx(c * a.birth, rel=1e-9, abs=0)
        if a.essential:
            assert b.essential
        else:
            assert b.death == pytest.approx(c * a.death, rel=1e-9)


def test_permutation_invariance_of_pairs(rng):
    pts = rng.random((8, 3))
    base = sorted((q.dim, q.birth, q.death) for q in vr_persistence(pairwise_distances(PointCloud(pts))))
    for _ in range(5):
        perm = rng.permutation(len(pts))
        other = sorted((q.dim, q.birth, q.death)
                       for q in vr_persistence(pairwise_distances(PointCloud(pts[perm]))))
        assert len(other) == len(base)
        for a, b in zip(base, other):
            assert a[0] == b[0]
            assert a[1] == pytest.approx(b[1], abs=1e-12)
            assert a[2] == pytest.approx(b[2], abs=1e-12) or a[2] == b[2] == INF
