"""Barbishov-Chernikov soliton surfaces from a generating pair (F, G).

With the four antiderivatives A = int r F'(r) dr, B = int r^2 F'(r) dr,
C = int s G'(s) ds, D = int s^2 G'(s) ds, all normalized to vanish at 0,
the surface is

    x = A(r) + C(s)                       (the height over the y-z plane)
    y = (F(r) - D(s) + G(s) - B(r)) / 2
    z = (G(s) - B(r) - F(r) + D(s)) / 2

Its tangents factor as X_r = F'(r) * (r, (1-r^2)/2, -(1+r^2)/2) and
X_s = G'(s) * (s, (1-s^2)/2, (1+s^2)/2), both lightlike directions, so the
surface is the half-sum of two null curves and is timelike minimal. The
unit normal depends only on (r, s): the generating pair scales out of the
cross product. Degeneracies sit on F'(r) G'(s) = 0 and on 1 + rs = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bjorling import SurfaceSample, _normals
from .errors import DegenerateGenerator, DegeneratePoint, LightlikeVector, ParseError
from .lorentz import Vec3L, lorentz_cross, unit_normalize
from .split_scalar import RealPoly
from .strips import CurveL3


@dataclass(frozen=True)
class BCData:
    """Generating pair and (r, s) sampling window."""

    F: RealPoly
    G: RealPoly
    domain: tuple      # (r0, r1, s0, s1)
    grid: tuple        # (nr, ns)

    def __post_init__(self):
        r0, r1, s0, s1 = (float(b) for b in self.domain)
        nr, ns = (int(g) for g in self.grid)
        if r1 < r0 or s1 < s0:
            raise ValueError("domain bounds must be ordered")
        if nr < 1 or ns < 1:
            raise ValueError("grid counts must be positive")
        object.__setattr__(self, "domain", (r0, r1, s0, s1))
        object.__setattr__(self, "grid", (nr, ns))

    def axes(self):
        r0, r1, s0, s1 = self.domain
        nr, ns = self.grid
        r = np.linspace(r0, r1, nr) if nr > 1 else np.array([0.5 * (r0 + r1)])
        s = np.linspace(s0, s1, ns) if ns > 1 else np.array([0.5 * (s0 + s1)])
        return r, s


@dataclass(frozen=True)
class LightlikePair:
    """Null curves psi(r), phi(s) with X = (psi + phi)/2."""

    psi: CurveL3
    phi: CurveL3


_T = RealPoly((0.0, 1.0))


def _antiderivatives(d: BCData):
    Fp, Gp = d.F.derivative(), d.G.derivative()
    A = (_T * Fp).antiderivative_from(0.0)
    B = (_T * _T * Fp).antiderivative_from(0.0)
    C = (_T * Gp).antiderivative_from(0.0)
    D = (_T * _T * Gp).antiderivative_from(0.0)
    return A, B, C, D


def _position(d: BCData, r, s):
    A, B, C, D = _antiderivatives(d)
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    zero = r * 0.0 + s * 0.0     # broadcast shape, keeps constants array-valued
    Fr, Gs = d.F(r) + zero, d.G(s) + zero
    x = A(r) + C(s) + zero
    y = 0.5 * (Fr - D(s) + Gs - B(r))
    z = 0.5 * (Gs - B(r) - Fr + D(s))
    return x, y, z


def bc_point(d: BCData, r: float, s: float) -> Vec3L:
    """Surface point at parameters (r, s), height first."""
    x, y, z = _position(d, float(r), float(s))
    return Vec3L(float(x), float(y), float(z))


def _tangent_r(d, r):
    f = np.asarray(d.F.derivative()(r), dtype=float)
    out = np.empty(np.shape(r) + (3,))
    out[..., 0] = f * r
    out[..., 1] = f * 0.5 * (1.0 - r * r)
    out[..., 2] = -f * 0.5 * (1.0 + r * r)
    return out


def _tangent_s(d, s):
    g = np.asarray(d.G.derivative()(s), dtype=float)
    out = np.empty(np.shape(s) + (3,))
    out[..., 0] = g * s
    out[..., 1] = g * 0.5 * (1.0 - s * s)
    out[..., 2] = g * 0.5 * (1.0 + s * s)
    return out


def bc_surface(d: BCData) -> SurfaceSample:
    """Evaluate the surface and its exact partials on the (r, s) grid.

    The sample reuses the solver's container with (u, v) := (r, s).
    X_rs vanishes identically (the surface splits into r and s parts).
    """
    r, s = d.axes()
    R, S = np.meshgrid(r, s, indexing="ij")
    x, y, z = _position(d, R, S)
    X = np.stack([x, y, z], axis=-1)
    Xr = _tangent_r(d, R)
    Xs = _tangent_s(d, S)
    Fp, Gp = d.F.derivative(), d.G.derivative()
    Fpp, Gpp = Fp.derivative(), Gp.derivative()
    fpp = np.asarray(Fpp(R), dtype=float) * np.ones_like(R)
    gpp = np.asarray(Gpp(S), dtype=float) * np.ones_like(S)
    fp = np.asarray(Fp(R), dtype=float) * np.ones_like(R)
    gp = np.asarray(Gp(S), dtype=float) * np.ones_like(S)
    Xrr = np.empty_like(Xr)
    Xrr[..., 0] = fpp * R + fp
    Xrr[..., 1] = fpp * 0.5 * (1.0 - R * R) - fp * R
    Xrr[..., 2] = -fpp * 0.5 * (1.0 + R * R) - fp * R
    Xss = np.empty_like(Xs)
    Xss[..., 0] = gpp * S + gp
    Xss[..., 1] = gpp * 0.5 * (1.0 - S * S) - gp * S
    Xss[..., 2] = gpp * 0.5 * (1.0 + S * S) + gp * S
    Xrs = np.zeros_like(Xr)
    N, light = _normals(Xr, Xs)
    return SurfaceSample(
        u=r, v=s, X=X, Xu=Xr, Xv=Xs, Xuu=Xrr, Xuv=Xrs, Xvv=Xss,
        N=N, lightlike=light, valid=np.ones_like(R, dtype=bool),
        approx=False, variant="bc",
    )


def bc_normal(d: BCData, r: float, s: float) -> Vec3L:
    """Unit surface normal at (r, s); independent of the generating pair.

    Raises DegeneratePoint where F'(r) G'(s) = 0 or the tangent cross
    product is lightlike (the locus 1 + rs = 0).
    """
    r, s = float(r), float(s)
    fp = float(d.F.derivative()(r))
    gp = float(d.G.derivative()(s))
    if fp * gp == 0.0:
        raise DegeneratePoint(f"F'G' vanishes at (r, s) = ({r:g}, {s:g})")
    Xr = Vec3L.from_array(_tangent_r(d, r))
    Xs = Vec3L.from_array(_tangent_s(d, s))
    try:
        return unit_normalize(lorentz_cross(Xr, Xs))
    except LightlikeVector as exc:
        raise DegeneratePoint(f"lightlike normal direction at (r, s) = ({r:g}, {s:g}); "
                              "this is the locus 1 + rs = 0") from exc


def shared_normal_direction(r, s):
    """The (F, G)-independent normal direction (1 - rs, -(r+s), -(r-s)),
    unnormalized; spacelike away from 1 + rs = 0."""
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    out = np.empty(np.broadcast(r, s).shape + (3,))
    out[..., 0] = 1.0 - r * s
    out[..., 1] = -(r + s)
    out[..., 2] = -(r - s)
    return out


def bc_lightlike_decomposition(d: BCData) -> LightlikePair:
    """Null curves with psi' = 2 X_r, phi' = 2 X_s and X = (psi + phi)/2."""
    if d.F.derivative().is_zero or d.G.derivative().is_zero:
        raise DegenerateGenerator("F and G must both be non-constant")
    A, B, C, D = _antiderivatives(d)
    psi = CurveL3(2.0 * A, d.F - B, -1.0 * d.F - B)
    phi = CurveL3(2.0 * C, d.G - D, d.G + D)
    return LightlikePair(psi, phi)


def lightlike_defects(d: BCData) -> tuple:
    """Coefficientwise defects of <psi', psi'> and <phi', phi'> (exact zero
    polynomials in exact arithmetic)."""
    pair = bc_lightlike_decomposition(d)
    out = []
    for cur in (pair.psi, pair.phi):
        dp = cur.derivative()
        q = dp.minkowski_inner(dp)
        out.append(max((abs(c) for c in q.coeffs), default=0.0))
    return tuple(out)


# --- BC files ---------------------------------------------------------------

def load_bc(path) -> BCData:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ParseError(f"{path}: {exc}") from exc
    for key in ("F", "G"):
        if key not in data or not isinstance(data[key], list):
            raise ParseError(f"{key} must be a coefficient list")
    dom = data.get("domain")
    if not isinstance(dom, list) or len(dom) != 4:
        raise ParseError("domain must be [r0, r1, s0, s1]")
    grid = data.get("grid")
    if not isinstance(grid, list) or len(grid) != 2:
        raise ParseError("grid must be [nr, ns]")
    return BCData(RealPoly(tuple(float(c) for c in data["F"])),
                  RealPoly(tuple(float(c) for c in data["G"])),
                  tuple(float(b) for b in dom), tuple(int(g) for g in grid))
