import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bezout.polytope import (
    Polytope,
    _closed_form_volume,
    box_inf,
    canonical_hull,
    cross_polytope,
    cube,
    minkowski_sum,
    minkowski_sum_all,
    point,
    polytope_from_json,
    polytope_to_json,
    project,
    scale,
    segment,
    segment_sum,
    simplex,
    standard_body,
    translate,
    volume,
)

from conftest import polys


@pytest.mark.parametrize("n", range(1, 6))
def test_standard_volumes(n):
    assert math.isclose(volume(simplex(n)), 1 / math.factorial(n), rel_tol=1e-9)
    assert math.isclose(volume(cube(n)), 1.0, rel_tol=1e-9)
    assert math.isclose(volume(cross_polytope(range(n), n)), 2**n / math.factorial(n), rel_tol=1e-9)
    assert math.isclose(volume(box_inf(range(n), n)), 2.0**n, rel_tol=1e-9)
    assert math.isclose(volume(simplex(n)), _closed_form_volume("simplex", n))


def test_interior_points_dropped():
    P = canonical_hull([(0, 0), (1, 0), (0, 1), (0.25, 0.25), (0.5, 0.5), (0, 0)])
    assert P.vertices.tolist() == [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]
    assert P.affine_dim == 2


def test_vertex_order_does_not_matter(rng):
    pts = rng.normal(size=(12, 3))
    a = canonical_hull(pts)
    b = canonical_hull(pts[rng.permutation(12)])
    assert a == b and hash(a) == hash(b)


def test_vertices_read_only():
    with pytest.raises(ValueError):
        cube(2).vertices[0, 0] = 5.0


def test_square_plus_diamond():
    S = minkowski_sum(cube(2), cross_polytope([0, 1], 2))
    assert S.n_vertices == 8
    assert math.isclose(volume(S), 7.0, rel_tol=1e-12)


def test_lower_dimensional_bodies():
    seg = segment(0, 3)
    assert seg.affine_dim == 1 and volume(seg) == 0.0
    flat = box_inf([1, 2], 3)
    assert flat.affine_dim == 2 and volume(flat) == 0.0
    assert math.isclose(volume(project(flat, [1, 2])), 4.0)
    pt = point(3, [1, 2, 3])
    assert pt.affine_dim == 0 and volume(pt) == 0.0


def test_flat_polygon_in_space():
    # a hexagon in a tilted plane keeps all six vertices
    ang = np.linspace(0, 2 * np.pi, 7)[:-1]
    frame = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
    P = canonical_hull(np.c_[np.cos(ang), np.sin(ang)] @ frame)
    assert P.n_vertices == 6 and P.affine_dim == 2


def test_segment_sums_and_empty_sets():
    assert volume(segment_sum([0, 2], 3)) == 0.0
    assert segment_sum([], 3).n_vertices == 1
    assert cross_polytope([], 2).n_vertices == 1
    assert box_inf([], 2).n_vertices == 1


def test_scale_and_translate():
    C = cube(3)
    assert math.isclose(volume(scale(C, 2.5)), 2.5**3)
    assert scale(C, 0).n_vertices == 1
    with pytest.raises(ValueError):
        scale(C, -1)
    T = translate(C, [1, -2, 3])
    assert math.isclose(volume(T), 1.0)
    assert np.allclose(T.vertices.min(axis=0), [1, -2, 3])
    assert math.isclose(volume(2 * C), 8.0)
    assert math.isclose(volume(C + C), 8.0)


def test_projection():
    P = cross_polytope(range(3), 3)
    Q = project(P, [0, 2])
    assert Q.dim == 2 and math.isclose(volume(Q), 2.0)
    with pytest.raises(ValueError):
        project(P, [])
    with pytest.raises(ValueError):
        project(P, [3])


@pytest.mark.parametrize("bad", [[], [[0, 0], [1]], [[0, np.nan]]])
def test_canonical_hull_rejects(bad):
    with pytest.raises(ValueError):
        canonical_hull(bad)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        minkowski_sum(cube(2), cube(3))
    with pytest.raises(ValueError):
        minkowski_sum_all([])


def test_standard_body():
    assert standard_body("cross_polytope", 3, indices=[0, 2]).n_vertices == 4
    assert standard_body("segment", 2, k=1) == segment(1, 2)
    with pytest.raises(ValueError):
        standard_body("box_inf", 3, indices=[])
    with pytest.raises(ValueError):
        standard_body("sphere", 3)


def test_json_round_trip():
    P = polys(3, 1, 5)[0]
    text = polytope_to_json(P)
    assert json.loads(text)["dim"] == 3
    assert polytope_from_json(text) == P
    with pytest.raises(ValueError):
        polytope_from_json(json.dumps({"dim": 3, "vertices": [[0, 0]]}))


def test_near_degenerate_input_is_handled():
    pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 1e-13]], dtype=float)
    P = canonical_hull(pts)
    assert volume(P) < 1e-10


coords = st.floats(-2, 2, allow_nan=False, width=32)


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=10),
       st.lists(st.tuples(coords, coords), min_size=3, max_size=10))
def test_brunn_minkowski_planar(a, b):
    A, B = canonical_hull(a), canonical_hull(b)
    S = minkowski_sum(A, B)
    lhs = math.sqrt(volume(S))
    assert lhs >= math.sqrt(volume(A)) + math.sqrt(volume(B)) - 1e-9


@given(st.integers(2, 4), st.integers(0, 2**32 - 1), st.floats(0.1, 10))
def test_volume_homogeneity_and_sum_monotone(n, seed, t):
    A, B = polys(n, 2, seed)
    assert math.isclose(volume(scale(A, t)), t**n * volume(A), rel_tol=1e-9)
    assert volume(minkowski_sum(A, B)) >= max(volume(A), volume(B)) * (1 - 1e-12)
    assert minkowski_sum(A, B).isclose(minkowski_sum(B, A))


def test_hash_and_equality_semantics():
    a = canonical_hull([(0, 0), (1, 0), (0, 1)])
    assert a == simplex(2)
    assert a != cube(2)
    assert a != "not a polytope"
    assert isinstance(a, Polytope)
