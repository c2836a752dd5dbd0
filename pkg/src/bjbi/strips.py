"""Björling data: real-analytic strips (curve, unit normal) and validation.

A strip pairs a regular curve c of constant causal character with a unit
normal field n orthogonal to c'. In the timelike_surface variant n is unit
spacelike; in the spacelike_surface variant n is unit timelike. Polynomial
components are validated by exact coefficient identities; Taylor-mode
components fall back to dense sampling and mark everything approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InflectionPoint, InvalidStrip, NotConstantSpeed, ParseError
from .lorentz import LIGHTLIKE, SPACELIKE, TIMELIKE, Vec3L
from .split_scalar import RealPoly, TaylorSeries, series_pow

TIMELIKE_SURFACE = "timelike_surface"
SPACELIKE_SURFACE = "spacelike_surface"

# exactness budget for per-coefficient polynomial identity checks
COEFF_TOL = 1e-12
# sampled-identity budget for Taylor-mode strips
TAYLOR_TOL = 1e-8
SAMPLE_COUNT = 512


@dataclass(frozen=True)
class CurveL3:
    """Curve or vector field in L^3 with polynomial or Taylor components."""

    x: RealPoly | TaylorSeries
    y: RealPoly | TaylorSeries
    z: RealPoly | TaylorSeries

    def __post_init__(self):
        kinds = {type(self.x), type(self.y), type(self.z)}
        if len(kinds) != 1:
            raise ValueError("curve components must share one representation kind")
        if self.is_taylor:
            centers = {self.x.center, self.y.center, self.z.center}
            if len(centers) != 1:
                raise ValueError("Taylor components must share one center")

    @classmethod
    def from_coeffs(cls, x, y, z):
        return cls(RealPoly(tuple(x)), RealPoly(tuple(y)), RealPoly(tuple(z)))

    @classmethod
    def from_taylor(cls, x, y, z, center, order):
        return cls(
            TaylorSeries(tuple(x), center, order),
            TaylorSeries(tuple(y), center, order),
            TaylorSeries(tuple(z), center, order),
        )

    @property
    def is_taylor(self):
        return isinstance(self.x, TaylorSeries)

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def eval(self, t):
        """Evaluate at real t; ndarray input yields shape t.shape + (3,)."""
        t = np.asarray(t, dtype=float)
        out = np.empty(t.shape + (3,))
        out[..., 0] = self.x(t)
        out[..., 1] = self.y(t)
        out[..., 2] = self.z(t)
        return out

    def eval_point(self, t: float) -> Vec3L:
        return Vec3L(float(self.x(t)), float(self.y(t)), float(self.z(t)))

    def derivative(self):
        return CurveL3(self.x.derivative(), self.y.derivative(), self.z.derivative())

    def antiderivative_from(self, t0):
        return CurveL3(
            self.x.antiderivative_from(t0),
            self.y.antiderivative_from(t0),
            self.z.antiderivative_from(t0),
        )

    def minkowski_inner(self, other):
        return self.x * other.x + self.y * other.y - self.z * other.z

    def euclidean_sq(self):
        return self.x * self.x + self.y * self.y + self.z * self.z

    def lorentz_cross(self, other):
        # same determinant convention as lorentz.lorentz_cross
        return CurveL3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.y * other.x - self.x * other.y,
        )


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_t: float
    worst_value: float
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    approx: bool
    curve_character: str = "unknown"

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        lines = [f"approx={self.approx}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(
                f"  [{mark}] {c.name}: worst {c.worst_value:.3e} at t={c.worst_t:.6g} {c.detail}"
            )
        return "\n".join(lines)


def _sample_grid(interval, n=SAMPLE_COUNT):
    t0, t1 = interval
    return np.linspace(t0, t1, max(int(n), 2))


def _identity_check(name, expr, interval, approx):
    """Check that a polynomial/series expression vanishes identically."""
    if not approx and isinstance(expr, RealPoly):
        coeffs = np.asarray(expr.coeffs) if expr.coeffs else np.zeros(1)
        k = int(np.argmax(np.abs(coeffs)))
        worst = abs(coeffs[k])
        return CheckResult(name, worst <= COEFF_TOL, float(k), float(worst),
                           "(coefficient index in worst_t)")
    t = _sample_grid(interval)
    vals = np.abs(np.asarray(expr(t), dtype=float))
    if vals.ndim == 0:
        vals = np.full_like(t, float(vals))
    k = int(np.argmax(vals))
    return CheckResult(name, float(vals[k]) <= TAYLOR_TOL, float(t[k]), float(vals[k]),
                       "(sampled)")


def strip_report(curve: CurveL3, normal: CurveL3, interval, variant) -> ValidationReport:
    """Validate raw Björling data without constructing a Strip."""
    t0, t1 = float(interval[0]), float(interval[1])
    checks = []
    approx = curve.is_taylor or normal.is_taylor
    if t1 <= t0:
        checks.append(CheckResult("interval ordered", False, t0, t1 - t0))
    cp = curve.derivative()

    target = 1.0 if variant == TIMELIKE_SURFACE else -1.0
    nn = normal.minkowski_inner(normal) - target
    checks.append(_identity_check(f"<n,n> = {target:g}", nn, (t0, t1), approx))
    checks.append(_identity_check("<c',n> = 0", cp.minkowski_inner(normal), (t0, t1), approx))

    t = _sample_grid((t0, t1))
    cpv = cp.eval(t)
    eucl = (cpv ** 2).sum(axis=-1)
    k = int(np.argmin(eucl))
    reg_tol = 1e-12 * (1.0 + float(eucl.max(initial=0.0)))
    checks.append(CheckResult("c regular", float(eucl[k]) > reg_tol, float(t[k]), float(eucl[k])))

    w = cpv[..., 0] ** 2 + cpv[..., 1] ** 2 - cpv[..., 2] ** 2
    causal_tol = 1e-10 * (1.0 + float(eucl.max(initial=0.0)))
    if np.all(w > causal_tol):
        character, ok, worst_k = SPACELIKE, True, int(np.argmin(w))
    elif np.all(w < -causal_tol):
        character, ok, worst_k = TIMELIKE, True, int(np.argmax(w))
    else:
        character, ok = LIGHTLIKE, False
        worst_k = int(np.argmin(np.abs(w)))
    checks.append(CheckResult("c non-lightlike, constant character", ok,
                              float(t[worst_k]), float(w[worst_k]), f"character={character}"))
    return ValidationReport(tuple(checks), approx, character)


@dataclass(frozen=True)
class Strip:
    """Validated Björling data; construction raises InvalidStrip on failure."""

    curve: CurveL3
    normal: CurveL3
    interval: tuple
    variant: str
    curve_character: str = field(init=False)

    def __post_init__(self):
        if self.variant not in (TIMELIKE_SURFACE, SPACELIKE_SURFACE):
            raise ValueError(f"unknown variant {self.variant!r}")
        object.__setattr__(self, "interval", (float(self.interval[0]), float(self.interval[1])))
        report = strip_report(self.curve, self.normal, self.interval, self.variant)
        if not report.ok:
            raise InvalidStrip(report)
        object.__setattr__(self, "curve_character", report.curve_character)

    @property
    def approx(self):
        return self.curve.is_taylor or self.normal.is_taylor

    @property
    def midpoint(self):
        return 0.5 * (self.interval[0] + self.interval[1])


def validate_strip(s: Strip) -> ValidationReport:
    """Re-run the construction-time checks and return the full report."""
    return strip_report(s.curve, s.normal, s.interval, s.variant)


def geodesic_strip(curve: CurveL3, interval, order: int = 16) -> Strip:
    """Strip whose surface contains the curve as a geodesic: n = c''/|c''|.

    Requires a constant-speed timelike curve (|<c',c'> + 1| <= 1e-8 on the
    interval) with spacelike, nonvanishing second derivative. When the
    normalization is non-polynomial the normal is emitted as a Taylor
    expansion about the interval midpoint.
    """
    t0, t1 = float(interval[0]), float(interval[1])
    t = _sample_grid((t0, t1))
    cp = curve.derivative()
    cpv = cp.eval(t)
    speed = cpv[..., 0] ** 2 + cpv[..., 1] ** 2 - cpv[..., 2] ** 2
    k = int(np.argmax(np.abs(speed + 1.0)))
    if abs(speed[k] + 1.0) > 1e-8:
        raise NotConstantSpeed(
            f"<c',c'> = {speed[k]:.6g} at t = {t[k]:.6g}; expected -1 (rescale the curve)"
        )
    cpp = cp.derivative()
    q = cpp.minkowski_inner(cpp)
    qv = np.asarray(q(t), dtype=float)
    if qv.ndim == 0:
        qv = np.full_like(t, float(qv))
    k = int(np.argmin(qv))
    tol = 1e-10 * (1.0 + float(np.abs(qv).max(initial=0.0)))
    if qv[k] <= tol:
        raise InflectionPoint(f"<c'',c''> = {qv[k]:.6g} at t = {t[k]:.6g}; need spacelike c''")

    coeffs = np.asarray(q.coeffs) if q.coeffs else np.zeros(1)
    if len(coeffs) == 1 or np.all(np.abs(coeffs[1:]) <= 1e-12 * max(abs(coeffs[0]), 1.0)):
        inv = float(1.0 / np.sqrt(coeffs[0]))
        normal = CurveL3(cpp.x * inv, cpp.y * inv, cpp.z * inv)
    else:
        mid = 0.5 * (t0 + t1)
        q_c = q.recentred(mid, order) if isinstance(q, RealPoly) else q
        if q_c.center != mid:
            raise ValueError("Taylor curve must be centered at the interval midpoint")
        qc = np.zeros(order + 1)
        qc[: len(q_c.coeffs)] = q_c.coeffs
        inv_sqrt = TaylorSeries(tuple(series_pow(qc, -0.5, order)), mid, order)
        comps = []
        for comp in cpp.components:
            c_c = comp.recentred(mid, order) if isinstance(comp, RealPoly) else comp
            comps.append(c_c * inv_sqrt)
        normal = CurveL3(*comps)
    return Strip(curve, normal, (t0, t1), TIMELIKE_SURFACE)


# --- strip files ----------------------------------------------------------

def _load_toml(path):
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _component_table(data, key, mode, center, order):
    table = data.get(key)
    if not isinstance(table, dict):
        raise ParseError(f"missing [{key}] table")
    comps = []
    for axis in ("x", "y", "z"):
        if axis not in table:
            raise ParseError(f"[{key}] must have x, y and z coefficient lists")
        coeffs = table[axis]
        if not isinstance(coeffs, list) or not all(
            isinstance(v, (int, float)) for v in coeffs
        ):
            raise ParseError(f"[{key}].{axis} must be a list of numbers")
        comps.append([float(v) for v in coeffs])
    if mode == "taylor":
        return CurveL3.from_taylor(*comps, center=center, order=order)
    return CurveL3.from_coeffs(*comps)


def load_strip(path) -> Strip:
    """Parse a strip file and return the validated Strip."""
    data = _load_toml(path)
    variant = data.get("variant")
    if variant not in (TIMELIKE_SURFACE, SPACELIKE_SURFACE):
        raise ParseError(f"variant must be {TIMELIKE_SURFACE!r} or {SPACELIKE_SURFACE!r}")
    interval = data.get("interval")
    if (
        not isinstance(interval, list)
        or len(interval) != 2
        or not all(isinstance(v, (int, float)) for v in interval)
    ):
        raise ParseError("interval must be [t0, t1]")
    mode = data.get("mode", "poly")
    if mode not in ("poly", "taylor"):
        raise ParseError("mode must be 'poly' or 'taylor'")
    center = float(data.get("center", 0.5 * (interval[0] + interval[1])))
    order = int(data.get("order", 16))
    curve = _component_table(data, "curve", mode, center, order)
    normal = _component_table(data, "normal", mode, center, order)
    return Strip(curve, normal, (interval[0], interval[1]), variant)


def _fmt_coeffs(p):
    coeffs = p.coeffs if p.coeffs else (0.0,)
    return "[" + ", ".join(f"{c!r}" for c in coeffs) + "]"


def save_strip(strip: Strip, path) -> None:
    lines = [f'variant = "{strip.variant}"',
             f"interval = [{strip.interval[0]!r}, {strip.interval[1]!r}]"]
    if strip.curve.is_taylor or strip.normal.is_taylor:
        if not (strip.curve.is_taylor and strip.normal.is_taylor):
            raise ValueError("cannot save mixed polynomial/Taylor strips")
        lines.append('mode = "taylor"')
        lines.append(f"center = {strip.curve.x.center!r}")
        lines.append(f"order = {min(c.order for c in strip.curve.components + strip.normal.components)}")
    for key, cur in (("curve", strip.curve), ("normal", strip.normal)):
        lines.append(f"[{key}]")
        for axis, comp in zip("xyz", cur.components):
            lines.append(f"{axis} = {_fmt_coeffs(comp)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
