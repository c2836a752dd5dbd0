import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjbi.errors import LightlikeVector
from bjbi.lorentz import (LIGHTLIKE, SPACELIKE, TIMELIKE, TimelikePlane, Vec3L,
                          causal_character, cross_nd, inner_nd, lorentz_cross,
                          minkowski_inner, unit_normalize)

coord = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
vecs = st.builds(Vec3L, coord, coord, coord)


def test_inner_examples():
    assert minkowski_inner(Vec3L(0, 0, 1), Vec3L(0, 0, 1)) == -1.0
    assert minkowski_inner(Vec3L(1, 1, 0), Vec3L(0, 0, 1)) == 0.0
    assert minkowski_inner(Vec3L(1, 2, 3), Vec3L(4, 5, 6)) == -4.0


def test_cross_examples():
    assert lorentz_cross(Vec3L(1, 0, 0), Vec3L(0, 1, 0)) == Vec3L(0, 0, -1)
    v = Vec3L(0.3, -1.2, 0.8)
    assert lorentz_cross(v, v) == Vec3L(0, 0, 0)
    out = lorentz_cross(Vec3L(1, 0, -1), Vec3L(0, 0.5, 0.5))
    assert out == Vec3L(0.5, -0.5, -0.5)


def test_causal_character_examples():
    assert causal_character(Vec3L(1, 0, 0)) == SPACELIKE
    assert causal_character(Vec3L(0, 0, 1)) == TIMELIKE
    assert causal_character(Vec3L(1, 0, 1)) == LIGHTLIKE


def test_unit_normalize_examples():
    assert unit_normalize(Vec3L(2, 0, 0)) == Vec3L(1, 0, 0)
    out = unit_normalize(Vec3L(0, 0, 3))
    assert out == Vec3L(0, 0, 1)
    assert minkowski_inner(out, out) == -1.0
    # null-cone vectors x^2 + y^2 = z^2 cannot be normalized
    with pytest.raises(LightlikeVector):
        unit_normalize(Vec3L(1, 0, 1))
    with pytest.raises(LightlikeVector):
        unit_normalize(Vec3L(3, 4, 5))


@given(vecs, vecs)
@settings(max_examples=300)
def test_cross_is_orthogonal_to_factors(a, b):
    c = lorentz_cross(a, b)
    scale = 1.0 + max(abs(x) for v in (a, b) for x in (v.x, v.y, v.z)) ** 2
    assert abs(minkowski_inner(c, a)) <= 1e-12 * scale
    assert abs(minkowski_inner(c, b)) <= 1e-12 * scale


def _det_cofactor(a, b, w):
    # cofactor expansion along the w row, mirroring the cross formula term
    # by term so the comparison below is exact in floating point
    return (w.x * (a.y * b.z - a.z * b.y)
            + w.y * (a.z * b.x - a.x * b.z)
            - w.z * (a.y * b.x - a.x * b.y))


@given(vecs, vecs, vecs)
@settings(max_examples=300)
def test_cross_det_identity_exact(a, b, w):
    c = lorentz_cross(a, b)
    assert minkowski_inner(c, w) == _det_cofactor(a, b, w)


@given(st.floats(min_value=-1.3, max_value=1.3, allow_nan=False),
       st.floats(min_value=0, max_value=np.pi, allow_nan=False))
@settings(max_examples=200)
def test_plane_completion(chi, theta):
    b1 = Vec3L(np.cos(theta) * np.cosh(chi), np.sin(theta) * np.cosh(chi), np.sinh(chi))
    plane = TimelikePlane.from_normal(b1)
    assert minkowski_inner(plane.b2, plane.b2) == pytest.approx(1.0, abs=1e-12)
    assert minkowski_inner(plane.b3, plane.b3) == pytest.approx(-1.0, abs=1e-12)
    assert abs(minkowski_inner(plane.b1, plane.b2)) < 1e-12
    assert abs(minkowski_inner(plane.b1, plane.b3)) < 1e-12
    assert abs(minkowski_inner(plane.b2, plane.b3)) < 1e-12


def test_plane_rejects_bad_frames():
    e1, e2, e3 = Vec3L(1, 0, 0), Vec3L(0, 1, 0), Vec3L(0, 0, 1)
    TimelikePlane(e1, e2, e3)  # the canonical frame passes
    with pytest.raises(ValueError):
        TimelikePlane(e1, e2, Vec3L(0, 1e-8, 1))     # b3 not orthogonal enough
    with pytest.raises(ValueError):
        TimelikePlane(e1, e2, Vec3L(0, 0, 1.001))    # b3 not unit
    with pytest.raises(ValueError):
        TimelikePlane(e3, e2, e1)                    # causal types swapped


def test_nd_helpers_match_scalar_forms():
    rng = np.random.default_rng(7)
    A = rng.normal(size=(5, 3))
    B = rng.normal(size=(5, 3))
    for k in range(5):
        a, b = Vec3L.from_array(A[k]), Vec3L.from_array(B[k])
        assert inner_nd(A, B)[k] == minkowski_inner(a, b)
        assert np.all(cross_nd(A, B)[k] == lorentz_cross(a, b).as_array())
