import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.spatial import ConvexHull
from scipy.spatial.distance import cdist

from numrange.errors import GridMismatchError
from numrange.geometry import (Affine, Conjugate, MirrorVertical, Polygon, convex_hull,
                               convexity_verdict, grid_step_tolerance, hausdorff,
                               minkowski_containment, points_in_polygon, polygon_distance,
                               polygon_hausdorff, transform_cloud)
from numrange.regions import DiscRegion, region_for
from numrange.sampler import sample_range

SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def test_hull_drops_interior_and_collinear_points():
    pts = np.vstack([SQUARE, [[0.5, 0.5], [0.5, 0.0], [1.0, 0.25], [0.2, 0.7]]])
    hull = convex_hull(pts)
    assert len(hull) == 4
    assert hull.area == pytest.approx(1.0)
    assert np.allclose(hull.centroid(), [0.5, 0.5])


def test_hull_degenerate_inputs():
    assert len(convex_hull([[1.0, 2.0]])) == 1
    assert len(convex_hull([[0, 0], [1, 1], [2, 2]])) == 2
    with pytest.raises(ValueError):
        convex_hull(np.empty((0, 2)))


point_sets = arrays(np.float64, st.tuples(st.integers(3, 200), st.just(2)),
                    elements=st.floats(-100, 100, allow_nan=False, width=32))


@settings(max_examples=60, deadline=None)
@given(pts=point_sets)
def test_hull_matches_qhull(pts):
    hull = convex_hull(pts)
    assert hull.area >= -1e-9
    assert points_in_polygon(pts, hull.vertices, eps=1e-9 * max(1, np.abs(pts).max()) ** 2).all()
    try:
        ref = ConvexHull(pts)
    except Exception:
        return  # qhull refuses flat sets
    assert hull.area == pytest.approx(ref.volume, rel=1e-9, abs=1e-9)


def test_large_cloud_hull_uses_prefilter_consistently():
    rng = np.random.default_rng(3)
    pts = rng.standard_normal((20000, 2))
    assert convex_hull(pts).area == pytest.approx(ConvexHull(pts).volume, rel=1e-12)


def test_polygon_distance_and_hausdorff():
    sq = Polygon(SQUARE)
    assert polygon_distance([[2.0, 0.5], [0.5, 0.5], [2.0, 2.0]], sq) == pytest.approx(
        [1.0, 0.0, np.sqrt(2)])
    shifted = Polygon(SQUARE + [0.25, 0.0])
    assert polygon_hausdorff(sq, shifted) == pytest.approx(0.25)
    assert polygon_hausdorff(sq, sq) == 0.0


@settings(max_examples=30, deadline=None)
@given(a=arrays(np.float64, (30, 2), elements=st.floats(-10, 10)),
       b=arrays(np.float64, (17, 2), elements=st.floats(-10, 10)))
def test_hausdorff_matches_brute_force(a, b):
    d = cdist(a, b)
    brute = max(d.min(axis=1).max(), d.min(axis=0).max())
    assert hausdorff(a, b) == pytest.approx(brute, abs=1e-12)
    assert hausdorff(a, b) == hausdorff(b, a)


def test_transforms():
    cloud = sample_range([[1, 2], [0.5j, -1]], 3.0, (16, 8))
    z = cloud.points[:, 0] + 1j * cloud.points[:, 1]
    out = transform_cloud(cloud, Affine(1 - 1j, 2j))
    assert np.allclose(out.points[:, 0] + 1j * out.points[:, 1], 1 - 1j + 2j * z)
    assert out.label != cloud.label
    mirrored = transform_cloud(cloud.points, MirrorVertical(0.5))
    assert np.allclose(mirrored[:, 0], 1.0 - cloud.points[:, 0])
    assert np.allclose(transform_cloud(cloud.points, Conjugate())[:, 1], -cloud.points[:, 1])


def test_minkowski_requires_shared_grid():
    A = sample_range([[1, 2], [0, 1]], 3.0, (16, 8))
    B = sample_range([[0, 1], [1j, 0]], 3.0, (16, 8))
    S = sample_range(np.array([[1, 3], [1j, 1]]), 3.0, (16, 8))
    rep = minkowski_containment(S, A, B)
    assert rep.passed and rep.count == 128
    with pytest.raises(GridMismatchError):
        minkowski_containment(S, A, sample_range([[0, 1], [1j, 0]], 3.0, (8, 8)))


def test_grid_step_tolerance_positive():
    cloud = sample_range([[0, 1], [0, 0]], 3.0, (32, 16))
    assert 0 < grid_step_tolerance(cloud) < 0.5
    cloud3 = sample_range(np.diag([1, 1j, -1]), 3.0, (6, 4))
    assert grid_step_tolerance(cloud3) > 0


def test_verdict_on_a_disc():
    cloud = sample_range([[0, 1], [0, 0]], 3.0, (64, 32))
    v = convexity_verdict(cloud, region_for(np.array([[0, 1], [0, 0]]), 3.0))
    assert v.verdict == "convex" and v.witness is None
    assert v.method == "parametric"


def test_cloud_verdict_on_a_dense_disc():
    cloud = sample_range([[0, 1], [0, 0]], 3.0, (128, 128))
    assert convexity_verdict(cloud).verdict == "convex"


def test_cloud_verdict_detects_a_wide_gap():
    cloud = sample_range([[0, 1], [0, 0]], 3.0, (64, 32))
    # two far apart copies of the disc: the midpoint is far from both
    pts = np.vstack([cloud.points - [3, 0], cloud.points + [3, 0]])
    v = convexity_verdict(pts, tol=grid_step_tolerance(cloud))
    assert v.verdict == "nonconvex"
    assert abs(v.witness[0]) < 2.4


def test_region_verdict_detects_a_gap():
    class TwoDiscs(DiscRegion):
        def membership(self, points, scan_resolution=512, tol=None):
            pts = np.atleast_2d(points)
            left = np.hypot(pts[:, 0] + 2, pts[:, 1]) <= 1 + 1e-12
            right = np.hypot(pts[:, 0] - 2, pts[:, 1]) <= 1 + 1e-12
            return left | right, None, None

        def distance(self, points, scan_resolution=512):
            pts = np.atleast_2d(points)
            d = np.minimum(np.hypot(pts[:, 0] + 2, pts[:, 1]), np.hypot(pts[:, 0] - 2, pts[:, 1]))
            return np.maximum(d - 1, 0)

    phi = np.linspace(0, 2 * np.pi, 200)
    circle = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    pts = np.vstack([circle - [2, 0], circle + [2, 0]])
    v = convexity_verdict(pts, TwoDiscs(0, 1), probe_resolution=50)
    assert v.verdict == "nonconvex"
    # the farthest hull points are the corners (0, +-1), at distance sqrt(5) - 1
    assert 1.0 <= v.defect <= np.sqrt(5) - 1 + 1e-9
    assert any("witness" in line for line in v.lines())
