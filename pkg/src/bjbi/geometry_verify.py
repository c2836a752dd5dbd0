"""Numerical differential geometry on sampled surfaces.

Fundamental forms and mean curvature of gridded surfaces, the Born-Infeld
residual operator for height fields over a timelike plane, the graph Gauss
curvature, causal classification, local graph axes, and extraction of the
height function over a given (or searched-for) timelike plane.

Degenerate nodes (lightlike normal, vanishing metric discriminant, thin
stencils) are flagged, never fatal: the theorems being verified are local
statements away from singular points, so verification reports singular
nodes instead of aborting on them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import binary_erosion
from scipy.spatial import cKDTree

from .bjorling import SurfaceSample, _normals
from .errors import InsufficientCoverage, NotInjective
from .lorentz import TimelikePlane, Vec3L, inner_nd

SIG_SPACELIKE_TIMELIKE = "spacelike_timelike"
SIG_BOTH_SPACELIKE = "spacelike_spacelike"

CAUSAL_TIMELIKE = -1
CAUSAL_DEGENERATE = 0
CAUSAL_SPACELIKE = 1


@dataclass
class FundamentalForms:
    """First and second fundamental form fields of a sampled surface.

    H = (G*L - 2*F*M + E*N2) / (2*(E*G - F^2)) wherever the discriminant
    is away from zero; elsewhere H is NaN and the node is flagged.
    K_ext is the shape-operator determinant (L*N2 - M^2) / (E*G - F^2).
    """

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    N2: np.ndarray
    H: np.ndarray
    disc: np.ndarray
    K_ext: np.ndarray
    degenerate: np.ndarray
    lightlike: np.ndarray
    valid: np.ndarray


def fundamental_forms(sample: SurfaceSample, tol: float | None = None) -> FundamentalForms:
    E = inner_nd(sample.Xu, sample.Xu)
    F = inner_nd(sample.Xu, sample.Xv)
    G = inner_nd(sample.Xv, sample.Xv)
    disc = E * G - F * F
    if tol is None:
        scale = 1.0 + float(np.nanmax(np.abs(np.stack([E, F, G]))))
        tol = 1e-10 * scale
    degenerate = np.abs(disc) <= tol
    L = inner_nd(sample.Xuu, sample.N)
    M = inner_nd(sample.Xuv, sample.N)
    N2 = inner_nd(sample.Xvv, sample.N)
    bad = degenerate | sample.lightlike
    with np.errstate(divide="ignore", invalid="ignore"):
        H = np.where(bad, np.nan, (G * L - 2.0 * F * M + E * N2) / (2.0 * disc))
        K_ext = np.where(bad, np.nan, (L * N2 - M * M) / disc)
    return FundamentalForms(E, F, G, L, M, N2, H, disc, K_ext,
                            degenerate, sample.lightlike, sample.valid)


def causal_classify(sample: SurfaceSample, tol: float | None = None) -> np.ndarray:
    """Per-node causal character of the induced metric: +1 spacelike,
    -1 timelike, 0 degenerate (sign of EG - F^2 with tolerance)."""
    E = inner_nd(sample.Xu, sample.Xu)
    F = inner_nd(sample.Xu, sample.Xv)
    G = inner_nd(sample.Xv, sample.Xv)
    disc = E * G - F * F
    if tol is None:
        tol = 1e-10 * (1.0 + float(np.nanmax(np.abs(np.stack([E, F, G])))))
    out = np.zeros(disc.shape, dtype=np.int8)
    out[disc > tol] = CAUSAL_SPACELIKE
    out[disc < -tol] = CAUSAL_TIMELIKE
    return out


def local_graph_axes(sample: SurfaceSample, tol: float | None = None) -> np.ndarray:
    """Per-node boolean triple (xy, xz, yz): which coordinate planes the
    surface is locally a graph over, by the 2x2 minors of [Xu Xv]."""
    Xu, Xv = sample.Xu, sample.Xv
    minors = np.stack([
        Xu[..., 0] * Xv[..., 1] - Xv[..., 0] * Xu[..., 1],   # xy
        Xu[..., 0] * Xv[..., 2] - Xv[..., 0] * Xu[..., 2],   # xz
        Xu[..., 1] * Xv[..., 2] - Xv[..., 1] * Xu[..., 2],   # yz
    ], axis=-1)
    if tol is None:
        scale = 1.0 + float(np.nanmax((Xu ** 2).sum(-1) + (Xv ** 2).sum(-1)))
        tol = 1e-9 * scale
    return np.abs(minors) > tol


@dataclass
class HeightField:
    """Height psi over an ordered plane coordinate pair with derivative
    fields. First variable spacelike; second timelike unless the signature
    marker says otherwise."""

    x2: np.ndarray
    x3: np.ndarray
    psi: np.ndarray
    psi_a: np.ndarray
    psi_b: np.ndarray
    psi_aa: np.ndarray
    psi_ab: np.ndarray
    psi_bb: np.ndarray
    valid: np.ndarray
    signature: str = SIG_SPACELIKE_TIMELIKE
    approx: bool = True
    plane: TimelikePlane | None = None

    @classmethod
    def from_callables(cls, f, fa, fb, faa, fab, fbb, x2, x3,
                       signature=SIG_SPACELIKE_TIMELIKE):
        """Exact field from analytic derivatives; not flagged approximate."""
        A, B = np.meshgrid(np.asarray(x2, float), np.asarray(x3, float), indexing="ij")
        shape = A.shape
        fields = [np.broadcast_to(np.asarray(g(A, B), dtype=float), shape).copy()
                  for g in (f, fa, fb, faa, fab, fbb)]
        return cls(np.asarray(x2, float), np.asarray(x3, float), *fields,
                   valid=np.ones(shape, dtype=bool), signature=signature, approx=False)

    @classmethod
    def from_values(cls, psi, x2, x3, signature=SIG_SPACELIKE_TIMELIKE):
        """Central-difference derivative fields; only interior nodes valid."""
        psi = np.asarray(psi, dtype=float)
        x2 = np.asarray(x2, float)
        x3 = np.asarray(x3, float)
        ha = x2[1] - x2[0]
        hb = x3[1] - x3[0]
        pa = np.full_like(psi, np.nan)
        pb = np.full_like(psi, np.nan)
        paa = np.full_like(psi, np.nan)
        pab = np.full_like(psi, np.nan)
        pbb = np.full_like(psi, np.nan)
        pa[1:-1, :] = (psi[2:, :] - psi[:-2, :]) / (2 * ha)
        pb[:, 1:-1] = (psi[:, 2:] - psi[:, :-2]) / (2 * hb)
        paa[1:-1, :] = (psi[2:, :] - 2 * psi[1:-1, :] + psi[:-2, :]) / ha ** 2
        pbb[:, 1:-1] = (psi[:, 2:] - 2 * psi[:, 1:-1] + psi[:, :-2]) / hb ** 2
        pab[1:-1, 1:-1] = (psi[2:, 2:] - psi[2:, :-2] - psi[:-2, 2:] + psi[:-2, :-2]) / (4 * ha * hb)
        valid = np.zeros(psi.shape, dtype=bool)
        valid[1:-1, 1:-1] = True
        return cls(x2, x3, psi, pa, pb, paa, pab, pbb, valid, signature, approx=True)


def born_infeld_residual(h: HeightField) -> np.ndarray:
    """Residual (1 - psi_b^2) psi_aa + 2 psi_a psi_b psi_ab - (1 + psi_a^2) psi_bb
    with a the spacelike and b the timelike plane variable; NaN off the
    valid mask."""
    if h.signature != SIG_SPACELIKE_TIMELIKE:
        raise ValueError("residual needs a (spacelike, timelike) height field")
    R = ((1.0 - h.psi_b ** 2) * h.psi_aa
         + 2.0 * h.psi_a * h.psi_b * h.psi_ab
         - (1.0 + h.psi_a ** 2) * h.psi_bb)
    return np.where(h.valid, R, np.nan)


def gauss_curvature_graph(h: HeightField, tol: float = 1e-8):
    """Graph Gauss curvature (psi_aa psi_bb - psi_ab^2) / (psi_a^2 - psi_b^2 + 1)^2.

    Returns (K, flagged); nodes where the timelike condition
    psi_a^2 - psi_b^2 + 1 > tol fails are flagged and get NaN.
    """
    W2 = h.psi_a ** 2 - h.psi_b ** 2 + 1.0
    flagged = (W2 <= tol) | ~h.valid
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(flagged, np.nan,
                     (h.psi_aa * h.psi_bb - h.psi_ab ** 2) / W2 ** 2)
    return K, flagged


def embed_height(h: HeightField, plane: TimelikePlane) -> SurfaceSample:
    """Embed a height field as the surface psi*b1 + x2*b2 + x3*b3 with
    exact partials inherited from the field."""
    b1 = plane.b1.as_array()
    b2 = plane.b2.as_array()
    b3 = plane.b3.as_array()
    shape = h.psi.shape

    def comb(cp, c2, c3):
        return (cp[..., None] * b1 + c2[..., None] * b2 + c3[..., None] * b3)

    one = np.ones(shape)
    zero = np.zeros(shape)
    A, B = np.meshgrid(h.x2, h.x3, indexing="ij")
    X = comb(h.psi, A, B)
    Xu = comb(h.psi_a, one, zero)
    Xv = comb(h.psi_b, zero, one)
    Xuu = comb(h.psi_aa, zero, zero)
    Xuv = comb(h.psi_ab, zero, zero)
    Xvv = comb(h.psi_bb, zero, zero)
    N, light = _normals(Xu, Xv)
    return SurfaceSample(u=h.x2, v=h.x3, X=X, Xu=Xu, Xv=Xv, Xuu=Xuu, Xuv=Xuv,
                         Xvv=Xvv, N=N, lightlike=light,
                         valid=h.valid.copy(), approx=h.approx, variant="graph")


# --- height extraction over a timelike plane --------------------------------

def _projected(sample: SurfaceSample, plane: TimelikePlane):
    ii, jj = np.nonzero(sample.valid)
    pts = sample.X[ii, jj]
    b1 = plane.b1.as_array()
    b2 = plane.b2.as_array()
    b3 = plane.b3.as_array()
    x2 = inner_nd(pts, b2)
    x3 = -inner_nd(pts, b3)      # timelike pairing sign so that X reconstructs
    psi = inner_nd(pts, b1)
    return ii, jj, x2, x3, psi


def _adjacent_spacing(ii, jj, P):
    """Median projected distance between lattice-adjacent valid nodes."""
    key = {}
    for k in range(len(ii)):
        key[(int(ii[k]), int(jj[k]))] = k
    dists = []
    for k in range(len(ii)):
        for di, dj in ((1, 0), (0, 1)):
            other = key.get((int(ii[k]) + di, int(jj[k]) + dj))
            if other is not None:
                dists.append(np.hypot(P[k, 0] - P[other, 0], P[k, 1] - P[other, 1]))
    return float(np.median(dists)) if dists else 0.0


def _check_injective(ii, jj, P, collide_frac=0.25, collide_abs=None):
    n = len(P)
    scale = 1.0 + float(np.max(np.abs(P), initial=0.0))
    tiny = collide_abs if collide_abs is not None else 1e-9 * scale
    spacing = _adjacent_spacing(ii, jj, P)
    if spacing <= tiny:
        # adjacent nodes project on top of each other somewhere
        raise NotInjective("projection collapses adjacent grid nodes", pair=None)
    tree = cKDTree(P)
    k_n = min(9, n)
    d, idx = tree.query(P, k=k_n)
    if k_n == 1:
        return tree, spacing
    r_fold = collide_frac * spacing
    for col in range(1, k_n):
        hit = d[:, col] < tiny
        for a in np.flatnonzero(hit):
            b = idx[a, col]
            raise NotInjective(
                f"projected nodes coincide: ({int(ii[a])},{int(jj[a])}) and "
                f"({int(ii[b])},{int(jj[b])})", pair=(int(a), int(b)))
        near = d[:, col] < r_fold
        for a in np.flatnonzero(near):
            b = idx[a, col]
            if abs(int(ii[a]) - int(ii[b])) > 1 or abs(int(jj[a]) - int(jj[b])) > 1:
                raise NotInjective(
                    f"projection folds: nodes ({int(ii[a])},{int(jj[a])}) and "
                    f"({int(ii[b])},{int(jj[b])}) collide at distance {d[a, col]:.3e}",
                    pair=(int(a), int(b)))
    return tree, spacing


def height_over_plane(sample: SurfaceSample, plane: TimelikePlane,
                      out_shape=None, stencil: int = 12, min_stencil: int = 9,
                      cover_factor: float = 3.0, margin_factor: float = 1.5,
                      collide_frac: float = 0.25, balance_max: float = 0.4) -> HeightField:
    """Extract psi = <X, b1> as a height field over the plane's (x2, x3)
    coordinates, resampled onto a regular grid by local quadratic
    least-squares fits (which also supply the derivative fields).

    The projection (x2, x3) = (<X, b2>, -<X, b3>) must be injective on the
    sampled nodes; x2 b2 + x3 b3 + psi b1 reconstructs the surface.
    Raises NotInjective on projection collisions and InsufficientCoverage
    when fit stencils cannot be populated. Targets whose stencil centroid
    is offset by more than balance_max of the stencil radius sit at the
    footprint rim, where one-sided fits degrade the derivative fields;
    they are masked out rather than reported.
    """
    ii, jj, x2, x3, psi = _projected(sample, plane)
    n = len(x2)
    if n < max(min_stencil, 6):
        raise InsufficientCoverage(f"only {n} valid sample nodes")
    P = np.column_stack([x2, x3])
    tree, spacing = _check_injective(ii, jj, P, collide_frac=collide_frac)

    if out_shape is None:
        out_shape = sample.grid_shape
    n2, n3 = int(out_shape[0]), int(out_shape[1])
    m = margin_factor * spacing
    lo2, hi2 = x2.min() + m, x2.max() - m
    lo3, hi3 = x3.min() + m, x3.max() - m
    if not (hi2 > lo2 and hi3 > lo3):
        raise InsufficientCoverage("projected footprint thinner than the fit margin")
    g2 = np.linspace(lo2, hi2, n2)
    g3 = np.linspace(lo3, hi3, n3)
    G2, G3 = np.meshgrid(g2, g3, indexing="ij")
    targets = np.column_stack([G2.ravel(), G3.ravel()])

    k = min(stencil, n)
    dist, idx = tree.query(targets, k=k)
    dist = np.atleast_2d(dist)
    idx = np.atleast_2d(idx)
    covered = dist[:, min(min_stencil, k) - 1] <= cover_factor * spacing

    # quadratic fit in stencil-scaled local coordinates
    rho = np.maximum(dist[:, -1], 1e-300)
    dx = (x2[idx] - targets[:, :1]) / rho[:, None]
    dy = (x3[idx] - targets[:, 1:2]) / rho[:, None]
    offset = np.hypot(dx.mean(axis=1), dy.mean(axis=1))
    covered &= offset <= balance_max
    Mdes = np.stack([np.ones_like(dx), dx, dy, dx * dx, dx * dy, dy * dy], axis=-1)
    w = psi[idx]
    ATA = np.einsum("nki,nkj->nij", Mdes, Mdes)
    ATb = np.einsum("nki,nk->ni", Mdes, w)
    beta = np.full((len(targets), 6), np.nan)
    ok = covered.copy()
    sel = np.flatnonzero(ok)
    if len(sel):
        try:
            beta[sel] = np.linalg.solve(ATA[sel], ATb[sel][..., None])[..., 0]
        except np.linalg.LinAlgError:
            for t in sel:
                try:
                    beta[t] = np.linalg.solve(ATA[t], ATb[t])
                except np.linalg.LinAlgError:
                    ok[t] = False
    shape = (n2, n3)
    # drop two rings at the covered-region rim, where one-sided stencils
    # degrade the fitted derivative fields
    core = binary_erosion(covered.reshape(shape), structure=np.ones((3, 3)),
                          iterations=2, border_value=0)
    ok &= core.ravel()
    if not ok.any():
        raise InsufficientCoverage("no target node could be fitted")
    valid = ok.reshape(shape)

    def fld(col, scale_pow, factor=1.0):
        out = factor * beta[:, col] / rho ** scale_pow
        return np.where(ok, out, np.nan).reshape(shape)

    return HeightField(
        x2=g2, x3=g3,
        psi=fld(0, 0), psi_a=fld(1, 1), psi_b=fld(2, 1),
        psi_aa=fld(3, 2, 2.0), psi_ab=fld(4, 2), psi_bb=fld(5, 2, 2.0),
        valid=valid, signature=SIG_SPACELIKE_TIMELIKE, approx=True, plane=plane,
    )


def find_graph_plane(sample: SurfaceSample, resolution: int,
                     boost_max: float = 1.5) -> TimelikePlane | None:
    """Scan unit spacelike normals b1(theta, chi) = (cos(theta) cosh(chi),
    sin(theta) cosh(chi), sinh(chi)) over a resolution x resolution grid,
    mildest boosts first, and return the first plane whose height
    extraction succeeds; None when the scan fails."""
    if resolution < 1:
        return None
    chis = np.unique(np.concatenate([[0.0], np.linspace(-boost_max, boost_max, resolution)]))
    chis = chis[np.argsort(np.abs(chis), kind="stable")]
    thetas = np.linspace(0.0, np.pi, resolution, endpoint=False)
    for chi in chis:
        for theta in thetas:
            b1 = Vec3L(np.cos(theta) * np.cosh(chi),
                       np.sin(theta) * np.cosh(chi),
                       np.sinh(chi))
            plane = TimelikePlane.from_normal(b1)
            try:
                height_over_plane(sample, plane)
            except (NotInjective, InsufficientCoverage):
                continue
            return plane
    return None
