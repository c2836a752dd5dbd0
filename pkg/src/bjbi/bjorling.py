"""Björling solver: split-complex / complex surface data and grid evaluation.

For a valid strip (c, n) the zero-mean-curvature surface through the data is
X = Re F with F(z) = c(z) + kappa * A(z), where A is the antiderivative of
n x c' vanishing at the interval's left endpoint and kappa is k' (timelike
variant) or i (spacelike variant). Everything is evaluated from exact
derivative polynomials; finite differences appear only in tests.

The timelike variant with a spacelike curve carries its data on the v-axis:
substituting w = k'z amounts to swapping the roles of u and v.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateEverywhere, EmptyRestriction
from .lorentz import cross_nd, inner_nd
from .strips import SPACELIKE, TIMELIKE_SURFACE, CurveL3, Strip

SPLIT = "split"
COMPLEX = "complex"
U_AXIS = "u_axis"
V_AXIS = "v_axis"


@dataclass(frozen=True)
class HolomorphicData:
    """Component pairs (base, integral) of F = base + kappa * integral."""

    base: CurveL3
    integral: CurveL3
    kind: str            # SPLIT or COMPLEX
    data_axis: str       # U_AXIS or V_AXIS
    t0: float
    approx: bool


def build_holomorphic_data(strip: Strip) -> HolomorphicData:
    """Assemble the surface data of a strip.

    The integrand n x c' is formed by exact componentwise polynomial
    products; its antiderivative vanishes at the interval's left endpoint.
    """
    t0 = strip.interval[0]
    integrand = strip.normal.lorentz_cross(strip.curve.derivative())
    integral = integrand.antiderivative_from(t0)
    if strip.variant == TIMELIKE_SURFACE:
        kind = SPLIT
        axis = V_AXIS if strip.curve_character == SPACELIKE else U_AXIS
    else:
        kind = COMPLEX
        axis = U_AXIS
    return HolomorphicData(strip.curve, integral, kind, axis, t0, strip.approx)


@dataclass(frozen=True)
class Domain:
    """Sampling domain: an axis-aligned rectangle or a diamond |u|+|v| <= M."""

    shape: str                  # "rect" or "diamond"
    bounds: tuple
    grid: tuple

    @classmethod
    def rect(cls, u0, u1, v0, v1, nu, nv):
        if u1 <= u0 or v1 <= v0:
            raise ValueError("rectangle bounds must be increasing")
        if nu < 1 or nv < 1:
            raise ValueError("grid counts must be positive")
        return cls("rect", (float(u0), float(u1), float(v0), float(v1)), (int(nu), int(nv)))

    @classmethod
    def diamond(cls, M, nu, nv):
        if M <= 0:
            raise ValueError("diamond size must be positive")
        return cls("diamond", (float(M),), (int(nu), int(nv)))

    def axes(self):
        nu, nv = self.grid
        if self.shape == "rect":
            u0, u1, v0, v1 = self.bounds
        else:
            (M,) = self.bounds
            u0, u1, v0, v1 = -M, M, -M, M
        u = np.linspace(u0, u1, nu) if nu > 1 else np.array([0.5 * (u0 + u1)])
        v = np.linspace(v0, v1, nv) if nv > 1 else np.array([0.5 * (v0 + v1)])
        return u, v

    def mask(self, U, V):
        if self.shape == "rect":
            return np.ones_like(U, dtype=bool)
        (M,) = self.bounds
        return np.abs(U) + np.abs(V) <= M * (1.0 + 1e-12) + 1e-15


@dataclass
class SurfaceSample:
    """Gridded surface with exact partials; assembled once, then read-only.

    Arrays are indexed [i, j] for (u[i], v[j]); vector fields have trailing
    axis 3. N is NaN where the raw normal is lightlike. axis_* arrays hold
    the solution restricted to the data axis, sampled on the strip interval.
    """

    u: np.ndarray
    v: np.ndarray
    X: np.ndarray
    Xu: np.ndarray
    Xv: np.ndarray
    Xuu: np.ndarray
    Xuv: np.ndarray
    Xvv: np.ndarray
    N: np.ndarray
    lightlike: np.ndarray
    valid: np.ndarray
    approx: bool
    variant: str | None = None
    data_axis: str | None = None
    axis_sign: int | None = None
    axis_t: np.ndarray | None = None
    axis_X: np.ndarray | None = None
    axis_Xu: np.ndarray | None = None
    axis_Xv: np.ndarray | None = None
    axis_N: np.ndarray | None = None

    @property
    def grid_shape(self):
        return self.X.shape[:2]

    def spacing(self):
        du = self.u[1] - self.u[0] if len(self.u) > 1 else 0.0
        dv = self.v[1] - self.v[0] if len(self.v) > 1 else 0.0
        return du, dv


def _eval_fields(hd: HolomorphicData, a, b):
    """Evaluate X and partials w.r.t. the evaluation coordinates (a, b).

    a is the coordinate carrying the data (real axis of the argument),
    b the transverse one. Returns arrays shaped like a with trailing 3.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    shape = np.broadcast(a, b).shape
    out = {k: np.empty(shape + (3,)) for k in ("X", "Xa", "Xb", "Xaa", "Xab", "Xbb")}
    if hd.kind == SPLIT:
        wp, wm = a + b, a - b
        for j, (P, Q) in enumerate(zip(hd.base.components, hd.integral.components)):
            P1, Q1 = P.derivative(), Q.derivative()
            P2, Q2 = P1.derivative(), Q1.derivative()
            for key_re, key_im, (Pd, Qd) in (
                ("X", None, (P, Q)),
                ("Xa", "Xb", (P1, Q1)),
                ("Xaa", "Xab", (P2, Q2)),
            ):
                pp, pm = Pd(wp), Pd(wm)
                qp, qm = Qd(wp), Qd(wm)
                # Re F = Re P + Im Q, Im F = Im P + Re Q in null coordinates
                re = 0.5 * (pp + pm) + 0.5 * (qp - qm)
                out[key_re][..., j] = re
                if key_im is not None:
                    out[key_im][..., j] = 0.5 * (pp - pm) + 0.5 * (qp + qm)
            out["Xbb"][..., j] = out["Xaa"][..., j]
    else:
        zc = a + 1j * b
        for j, (P, Q) in enumerate(zip(hd.base.components, hd.integral.components)):
            P1, Q1 = P.derivative(), Q.derivative()
            P2, Q2 = P1.derivative(), Q1.derivative()
            F0 = P(zc) + 1j * Q(zc)
            F1 = P1(zc) + 1j * Q1(zc)
            F2 = P2(zc) + 1j * Q2(zc)
            out["X"][..., j] = F0.real
            out["Xa"][..., j] = F1.real
            out["Xb"][..., j] = -F1.imag
            out["Xaa"][..., j] = F2.real
            out["Xab"][..., j] = -F2.imag
            out["Xbb"][..., j] = -F2.real
    return out


def _normals(Xu, Xv, tol_factor=1e-10):
    raw = cross_nd(Xu, Xv)
    nn = inner_nd(raw, raw)
    scale = 1.0 + (raw ** 2).sum(axis=-1)
    light = np.abs(nn) <= tol_factor * scale
    N = np.full_like(raw, np.nan)
    safe = ~light
    N[safe] = raw[safe] / np.sqrt(np.abs(nn[safe]))[..., None]
    return N, light


def solve(strip: Strip, domain: Domain) -> SurfaceSample:
    """Evaluate the Björling solution of a strip on a sampling domain."""
    hd = build_holomorphic_data(strip)
    u, v = domain.axes()
    U, V = np.meshgrid(u, v, indexing="ij")
    swap = hd.data_axis == V_AXIS
    fields = _eval_fields(hd, V if swap else U, U if swap else V)
    if swap:
        Xu, Xv = fields["Xb"], fields["Xa"]
        Xuu, Xuv, Xvv = fields["Xbb"], fields["Xab"], fields["Xaa"]
    else:
        Xu, Xv = fields["Xa"], fields["Xb"]
        Xuu, Xuv, Xvv = fields["Xaa"], fields["Xab"], fields["Xbb"]
    N, light = _normals(Xu, Xv)
    valid = domain.mask(U, V)
    if not valid.any():
        raise EmptyRestriction("sampling domain contains no grid nodes")
    if np.all(light[valid]):
        raise DegenerateEverywhere("normal is lightlike at every domain node")

    # restriction to the data axis, sampled on the strip interval
    n_axis = domain.grid[1] if swap else domain.grid[0]
    axis_t = np.linspace(strip.interval[0], strip.interval[1], n_axis)
    af = _eval_fields(hd, axis_t, np.zeros_like(axis_t))
    axis_Xu, axis_Xv = (af["Xb"], af["Xa"]) if swap else (af["Xa"], af["Xb"])
    axis_N, axis_light = _normals(axis_Xu, axis_Xv)

    # pin the normal sign: <N, n> > 0 at the interval midpoint on the axis
    mid = int(np.argmin(np.abs(axis_t - strip.midpoint)))
    n_mid = strip.normal.eval(axis_t[mid])
    sign_ip = float(inner_nd(axis_N[mid], n_mid))
    if sign_ip < 0:
        N = -N
        axis_N = -axis_N
    align = 1 if float(((axis_N[mid] - n_mid) ** 2).sum()) <= float(
        ((axis_N[mid] + n_mid) ** 2).sum()
    ) else -1

    return SurfaceSample(
        u=u, v=v, X=fields["X"], Xu=Xu, Xv=Xv, Xuu=Xuu, Xuv=Xuv, Xvv=Xvv,
        N=N, lightlike=light, valid=valid, approx=hd.approx,
        variant=strip.variant, data_axis=hd.data_axis, axis_sign=align,
        axis_t=axis_t, axis_X=af["X"], axis_Xu=axis_Xu, axis_Xv=axis_Xv,
        axis_N=axis_N,
    )


def restrict_to_diamond(sample: SurfaceSample, M: float) -> SurfaceSample:
    """Keep only nodes with |u| + |v| <= M; lattice adjacency is implicit
    in the retained valid mask."""
    if M < 0:
        raise ValueError("diamond size must be nonnegative")
    U, V = np.meshgrid(sample.u, sample.v, indexing="ij")
    dmask = np.abs(U) + np.abs(V) <= M * (1.0 + 1e-12) + 1e-15
    new_valid = sample.valid & dmask
    if not new_valid.any():
        raise EmptyRestriction(f"no grid node satisfies |u|+|v| <= {M:g}")
    return replace(sample, valid=new_valid)
