"""Lorentz-Minkowski 3-space: metric, cross product, causal classification.

The ambient space is R^3 with the quadratic form x^2 + y^2 - z^2 (signature
+,+,-; the z-axis is the timelike direction). The cross product follows the
determinant convention <a x b, w> = det(a, b, w), which makes a x b
Lorentz-orthogonal to both factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LightlikeVector

SPACELIKE = "spacelike"
TIMELIKE = "timelike"
LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class Vec3L:
    x: float
    y: float
    z: float

    def __add__(self, other):
        return Vec3L(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Vec3L(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s):
        return Vec3L(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec3L(-self.x, -self.y, -self.z)

    def as_array(self):
        return np.array([self.x, self.y, self.z])

    @classmethod
    def from_array(cls, a):
        return cls(float(a[0]), float(a[1]), float(a[2]))


def minkowski_inner(a: Vec3L, b: Vec3L) -> float:
    return a.x * b.x + a.y * b.y - a.z * b.z


def lorentz_cross(a: Vec3L, b: Vec3L) -> Vec3L:
    """The unique c with <c, w> = det(a, b, w) for all w."""
    return Vec3L(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.y * b.x - a.x * b.y,
    )


def default_causal_tol(v: Vec3L) -> float:
    # scale-aware lightlike detection
    return 1e-10 * (1.0 + v.x * v.x + v.y * v.y + v.z * v.z)


def causal_character(v: Vec3L, tol: float | None = None) -> str:
    if tol is None:
        tol = default_causal_tol(v)
    q = minkowski_inner(v, v)
    if q > tol:
        return SPACELIKE
    if q < -tol:
        return TIMELIKE
    return LIGHTLIKE


def unit_normalize(v: Vec3L, tol: float | None = None) -> Vec3L:
    """v / sqrt(|<v,v>|); raises LightlikeVector near the null cone."""
    if tol is None:
        tol = default_causal_tol(v)
    q = minkowski_inner(v, v)
    if abs(q) <= tol:
        raise LightlikeVector(f"cannot normalize vector with <v,v> = {q:g}")
    return v * (1.0 / np.sqrt(abs(q)))


# --- array forms, used for whole-grid work -------------------------------

def inner_nd(a, b):
    """Minkowski inner product over trailing axis 3."""
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]


def cross_nd(a, b):
    """Lorentz cross product over trailing axis 3."""
    out = np.empty(np.broadcast(a, b).shape)
    out[..., 0] = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    out[..., 1] = a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2]
    out[..., 2] = a[..., 1] * b[..., 0] - a[..., 0] * b[..., 1]
    return out


_PLANE_TOL = 1e-10


@dataclass(frozen=True)
class TimelikePlane:
    """Orthonormal frame of a timelike plane: b1 the unit spacelike normal,
    {b2, b3} an orthonormal (spacelike, timelike) basis of the plane."""

    b1: Vec3L
    b2: Vec3L
    b3: Vec3L

    def __post_init__(self):
        checks = [
            ("<b1,b1> = 1", minkowski_inner(self.b1, self.b1) - 1.0),
            ("<b2,b2> = 1", minkowski_inner(self.b2, self.b2) - 1.0),
            ("<b3,b3> = -1", minkowski_inner(self.b3, self.b3) + 1.0),
            ("<b1,b2> = 0", minkowski_inner(self.b1, self.b2)),
            ("<b1,b3> = 0", minkowski_inner(self.b1, self.b3)),
            ("<b2,b3> = 0", minkowski_inner(self.b2, self.b3)),
        ]
        bad = [(name, err) for name, err in checks if abs(err) > _PLANE_TOL]
        if bad:
            msg = "; ".join(f"{name} off by {err:.3e}" for name, err in bad)
            raise ValueError(f"not an orthonormal timelike-plane frame: {msg}")

    @classmethod
    def from_normal(cls, b1: Vec3L) -> "TimelikePlane":
        """Complete a unit spacelike normal to an orthonormal frame.

        b3 is the normalized Lorentz projection of the time axis onto the
        plane (always timelike), b2 = b1 x b3 closes the frame.
        """
        e3 = Vec3L(0.0, 0.0, 1.0)
        w = e3 - minkowski_inner(e3, b1) * b1
        b3 = unit_normalize(w)
        if b3.z < 0:
            b3 = -b3
        b2 = unit_normalize(lorentz_cross(b1, b3))
        return cls(b1, b2, b3)

    @classmethod
    def yz_plane(cls) -> "TimelikePlane":
        return cls(Vec3L(1.0, 0.0, 0.0), Vec3L(0.0, 1.0, 0.0), Vec3L(0.0, 0.0, 1.0))

    @classmethod
    def xz_plane(cls) -> "TimelikePlane":
        return cls(Vec3L(0.0, 1.0, 0.0), Vec3L(1.0, 0.0, 0.0), Vec3L(0.0, 0.0, 1.0))
