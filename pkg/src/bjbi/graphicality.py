"""Graphicality analysis: can the solved surface be a graph over the y-z plane?

The decisive object is the 2x2 Jacobian [[y_u, y_v], [z_u, z_v]] taken from
the solved surface's partials. A certified zero of its determinant on the
data axis rules out a singularity-free graph solution; a nonvanishing
determinant plus a positive-quasidefinite (or P-matrix) certificate on the
whole sampled field yields a graph solution by Gale-Nikaido injectivity on
convex domains. All "for all" verdicts are certified on the sampled set
only, and say so.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bjorling import Domain, SurfaceSample, solve
from .errors import InvalidStrip
from .split_scalar import RealPoly
from .strips import SPACELIKE_SURFACE, TIMELIKE_SURFACE, CurveL3, Strip

NO_GRAPH = "NoGraphSolution"
GRAPH_EXISTS = "GraphSolutionExists"
INDETERMINATE = "Indeterminate"

PQD = "pqd"
P_MATRIX = "p_matrix"

_MAX_WITNESSES = 32


@dataclass(frozen=True)
class Mat2:
    a11: float
    a12: float
    a21: float
    a22: float

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def sym(self):
        off = 0.5 * (self.a12 + self.a21)
        return Mat2(self.a11, off, off, self.a22)


def is_positive_quasidefinite(m: Mat2, tol: float = 1e-12) -> bool:
    """True iff the symmetric part (m + m^T)/2 is positive definite,
    tested through its leading minors."""
    a = m.sym()
    return a.a11 > tol and a.det() > tol * tol


def is_p_matrix(m: Mat2, tol: float = 1e-12) -> bool:
    """True iff all principal minors of m are positive."""
    return m.a11 > tol and m.a22 > tol and m.det() > tol * tol


@dataclass
class JacobianField:
    """Per-node Jacobians [[y_u, y_v], [z_u, z_v]] plus the data-axis trace.

    The trace is sampled on the strip interval; it coincides exactly with
    the field's axis row whenever the domain's data-axis range equals the
    strip interval and the transverse coordinate 0 is a grid line.
    """

    J: np.ndarray          # (nu, nv, 2, 2)
    det: np.ndarray        # (nu, nv)
    valid: np.ndarray      # (nu, nv)
    trace_t: np.ndarray | None
    trace: np.ndarray | None
    trace_det: np.ndarray | None
    data_axis: str | None


def _stack_jacobian(Xu, Xv):
    J = np.empty(Xu.shape[:-1] + (2, 2))
    J[..., 0, 0] = Xu[..., 1]
    J[..., 0, 1] = Xv[..., 1]
    J[..., 1, 0] = Xu[..., 2]
    J[..., 1, 1] = Xv[..., 2]
    return J


def _det2(J):
    return J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]


def jacobian_field(sample: SurfaceSample) -> JacobianField:
    J = _stack_jacobian(sample.Xu, sample.Xv)
    if sample.axis_Xu is not None:
        trace = _stack_jacobian(sample.axis_Xu, sample.axis_Xv)
        trace_t, trace_det = sample.axis_t, _det2(trace)
    else:
        trace = trace_t = trace_det = None
    return JacobianField(J, _det2(J), sample.valid, trace_t, trace, trace_det,
                         sample.data_axis)


@dataclass(frozen=True)
class GraphVerdict:
    verdict: str
    criterion: str
    witnesses: tuple
    certified_on: str
    nodes_checked: int

    def __str__(self):
        head = f"{self.verdict} (criterion={self.criterion}, {self.certified_on})"
        if not self.witnesses:
            return head
        lines = [head] + [f"  at ({a:.4g}, {b:.4g}): {why}" for a, b, why in self.witnesses]
        return "\n".join(lines)


def classify(sample: SurfaceSample, field: JacobianField, criterion: str = PQD,
             tol_zero: float | None = None, tol_criterion: float = 1e-12) -> GraphVerdict:
    """Three-way graphicality verdict on a convex sampled domain.

    NoGraphSolution needs a boundary witness: a sign change of det J(t)
    between adjacent axis samples, or |det J(t)| below tol_zero. A
    GraphSolutionExists verdict additionally certifies the chosen matrix
    criterion at every sampled node; everything else is Indeterminate.
    Near-zeros of the full field that never change sign on the axis cannot
    be certified by sampling and therefore only downgrade the verdict.
    """
    if field.trace_det is None:
        raise ValueError("classification needs a sample with data-axis arrays")
    if criterion not in (PQD, P_MATRIX):
        raise ValueError(f"unknown criterion {criterion!r}")
    scale = 1.0 + float(np.max(field.trace[..., :, :] ** 2, initial=0.0))
    if tol_zero is None:
        tol_zero = 1e-9 * scale

    witnesses = []
    td = field.trace_det
    hits = np.flatnonzero(np.abs(td) < tol_zero)
    for i in hits[:_MAX_WITNESSES]:
        witnesses.append((float(field.trace_t[i]), 0.0,
                          f"boundary det J(t) = {td[i]:.3e} within tol of zero"))
    flips = np.flatnonzero(td[:-1] * td[1:] < 0)
    for i in flips[:_MAX_WITNESSES]:
        witnesses.append((float(field.trace_t[i]), 0.0,
                          f"boundary det J(t) changes sign on [{field.trace_t[i]:.4g}, "
                          f"{field.trace_t[i + 1]:.4g}]"))
    certified = "certified on the sampled set"
    n_checked = int(field.valid.sum())
    if witnesses:
        return GraphVerdict(NO_GRAPH, criterion, tuple(witnesses[:_MAX_WITNESSES]),
                            certified, n_checked)

    test = is_positive_quasidefinite if criterion == PQD else is_p_matrix
    U, V = np.meshgrid(sample.u, sample.v, indexing="ij")
    idx = np.argwhere(field.valid)
    all_ok = True
    for i, j in idx:
        m = Mat2(*field.J[i, j].ravel())
        if abs(field.det[i, j]) <= tol_zero:
            all_ok = False
            if len(witnesses) < _MAX_WITNESSES:
                witnesses.append((float(U[i, j]), float(V[i, j]),
                                  f"det J = {field.det[i, j]:.3e} within tol of zero"))
        elif not test(m, tol_criterion):
            all_ok = False
            if len(witnesses) < _MAX_WITNESSES:
                witnesses.append((float(U[i, j]), float(V[i, j]),
                                  f"{criterion} criterion fails"))
    if all_ok:
        return GraphVerdict(GRAPH_EXISTS, criterion, (), certified, n_checked)
    return GraphVerdict(INDETERMINATE, criterion, tuple(witnesses), certified, n_checked)


# --- randomized strip search ------------------------------------------------

def _boost_candidate(rng, interval):
    g = float(rng.uniform(0.05, 2.0))
    curve = CurveL3.from_coeffs([0.0], [0.0, 1.0], [0.0])
    normal = CurveL3.from_coeffs([np.sinh(g)], [0.0], [np.cosh(g)])
    return Strip(curve, normal, interval, SPACELIKE_SURFACE)


def _spacelike_poly_candidate(rng, interval):
    # unit timelike normal family n = (p, p^2/2, p^2/2 + 1) for any polynomial p
    p0 = float(rng.uniform(-1.5, 1.5))
    eps = float(rng.uniform(-0.5, 0.5))
    alpha = float(rng.uniform(-1.5, 1.5))
    p = RealPoly((p0, eps))
    half_p2 = 0.5 * (p * p)
    normal = CurveL3(p, half_p2, half_p2 + RealPoly((1.0,)))
    c1p = RealPoly((alpha,))
    c3p = c1p * p + half_p2          # forces <c', n> = 0 with c2' = c3' + 1
    c2p = c3p + RealPoly((1.0,))
    t0 = interval[0]
    curve = CurveL3(c1p.antiderivative_from(t0), c2p.antiderivative_from(t0),
                    c3p.antiderivative_from(t0))
    return Strip(curve, normal, interval, SPACELIKE_SURFACE)


def _timelike_poly_candidate(rng, interval):
    # unit spacelike normal family n = (a, (a^2 - 2)/2, a^2/2); no certified
    # draw has been observed from this family, matching the constant-normal
    # picture for straight timelike curves
    a0 = float(rng.uniform(-1.0, 1.0))
    beta = float(rng.uniform(-0.6, 0.6))
    eps = float(rng.uniform(-0.4, 0.4))
    a = RealPoly((a0, beta))
    normal = CurveL3(a, 0.5 * (a * a) - RealPoly((1.0,)), 0.5 * (a * a))
    c1p = RealPoly((0.0, eps))
    c3p = c1p * a - 0.5 * (a * a) + RealPoly((1.0,))   # keeps c timelike for small params
    c2p = c3p - RealPoly((1.0,))
    t0 = interval[0]
    curve = CurveL3(c1p.antiderivative_from(t0), c2p.antiderivative_from(t0),
                    c3p.antiderivative_from(t0))
    return Strip(curve, normal, interval, TIMELIKE_SURFACE)


_FAMILIES = (_boost_candidate, _spacelike_poly_candidate, _timelike_poly_candidate)


def search_pqd_strips(budget: int, seed: int, interval=(-1.0, 1.0),
                      grid=(15, 15), criterion: str = PQD) -> list:
    """Seeded random search for strips whose sampled Jacobian field is
    positive quasidefinite with nonvanishing determinant.

    Draws low-degree polynomial strips from a few structurally valid
    families, solves each on a modest grid and keeps the ones classified
    GraphSolutionExists. Deterministic in (budget, seed); may be empty.
    """
    rng = np.random.default_rng(seed)
    domain = Domain.rect(interval[0], interval[1], interval[0], interval[1], *grid)
    found = []
    for _ in range(int(budget)):
        family = _FAMILIES[int(rng.integers(0, len(_FAMILIES)))]
        try:
            strip = family(rng, interval)
        except InvalidStrip:
            continue
        sample = solve(strip, domain)
        verdict = classify(sample, jacobian_field(sample), criterion)
        if verdict.verdict == GRAPH_EXISTS:
            found.append(strip)
    return found
