"""Scalar algebras and exact polynomial calculus.

Two planar algebras drive the surface construction: split-complex numbers
u + k'v with k'*k' = +1 (timelike branch) and ordinary complex numbers
u + iv (spacelike branch). Real polynomials extend to either algebra by
Horner evaluation under the algebra's product law; for a polynomial that
extension *is* its analytic extension, so the whole pipeline stays exact.

Truncated Taylor series are supported as a second-class representation for
non-polynomial data (trigonometric/hyperbolic curves). Anything computed
through a TaylorSeries is approximate and is flagged as such downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real

import numpy as np

# Trailing coefficients below this magnitude are canonicalized away after
# arithmetic; prevents degree inflation from cancellation noise.
COEFF_DROP = 1e-14


@dataclass(frozen=True)
class SplitComplex:
    """Number u + k'v in the split-complex (hyperbolic) algebra, k'*k' = +1."""

    re: float
    im: float

    def __add__(self, other):
        if isinstance(other, SplitComplex):
            return SplitComplex(self.re + other.re, self.im + other.im)
        if isinstance(other, Real):
            return SplitComplex(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SplitComplex):
            return SplitComplex(self.re - other.re, self.im - other.im)
        if isinstance(other, Real):
            return SplitComplex(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return SplitComplex(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, SplitComplex):
            return SplitComplex(
                self.re * other.re + self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, Real):
            return SplitComplex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return SplitComplex(-self.re, -self.im)

    def conj(self):
        return SplitComplex(self.re, -self.im)

    def modulus_sq(self):
        """z * conj(z) = u^2 - v^2; real and possibly negative.

        Vanishes exactly on the zero-divisor lines |u| = |v|.
        """
        return self.re * self.re - self.im * self.im


@dataclass(frozen=True)
class ComplexScalar:
    """Number u + iv with i*i = -1 (explicit analogue of SplitComplex)."""

    re: float
    im: float

    def __add__(self, other):
        if isinstance(other, ComplexScalar):
            return ComplexScalar(self.re + other.re, self.im + other.im)
        if isinstance(other, Real):
            return ComplexScalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ComplexScalar):
            return ComplexScalar(self.re - other.re, self.im - other.im)
        if isinstance(other, Real):
            return ComplexScalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return ComplexScalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ComplexScalar):
            return ComplexScalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, Real):
            return ComplexScalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def conj(self):
        return ComplexScalar(self.re, -self.im)

    def modulus_sq(self):
        """z * conj(z) = u^2 + v^2 >= 0."""
        return self.re * self.re + self.im * self.im


#: The split imaginary unit k' and the ordinary imaginary unit i.
SPLIT_UNIT = SplitComplex(0.0, 1.0)
IMAG_UNIT = ComplexScalar(0.0, 1.0)


def _horner(coeffs, t):
    """Evaluate ascending coefficients at t (real, ndarray, or scalar algebra)."""
    if not coeffs:
        return t * 0.0
    acc = coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * t + c
    return acc


def _shift_coeffs(coeffs, center):
    """Rewrite ascending coefficients of p(t) in powers of (t - center)."""
    b = list(coeffs)
    n = len(b)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            b[j] += center * b[j + 1]
    return b


@dataclass(frozen=True)
class RealPoly:
    """Real polynomial, ascending coefficients, canonical trailing form."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [float(x) for x in self.coeffs]
        while c and abs(c[-1]) < COEFF_DROP:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def approx_flag(self):
        return False

    def __call__(self, t):
        return _horner(self.coeffs, t)

    def __add__(self, other):
        if isinstance(other, RealPoly):
            n = max(len(self.coeffs), len(other.coeffs))
            a = np.zeros(n)
            a[: len(self.coeffs)] = self.coeffs
            a[: len(other.coeffs)] += other.coeffs
            return RealPoly(tuple(a))
        if isinstance(other, Real):
            return self + RealPoly((float(other),))
        if isinstance(other, TaylorSeries):
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RealPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, (RealPoly, TaylorSeries)) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealPoly):
            if self.is_zero or other.is_zero:
                return RealPoly()
            return RealPoly(tuple(np.convolve(self.coeffs, other.coeffs)))
        if isinstance(other, Real):
            return RealPoly(tuple(float(other) * c for c in self.coeffs))
        if isinstance(other, TaylorSeries):
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def derivative(self):
        c = self.coeffs
        return RealPoly(tuple(k * c[k] for k in range(1, len(c))))

    def antiderivative_from(self, t0):
        """Antiderivative normalized to vanish at t0."""
        c = self.coeffs
        q = [0.0] + [c[k] / (k + 1) for k in range(len(c))]
        q[0] = -_horner(tuple(q), float(t0))
        return RealPoly(tuple(q))

    def recentred(self, center, order=None):
        """Exact Taylor-shift to a TaylorSeries about `center`."""
        shifted = _shift_coeffs(self.coeffs, float(center))
        if order is None:
            order = max(len(shifted) - 1, 0)
        return TaylorSeries(tuple(shifted[: order + 1]), float(center), order)


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated expansion in powers of (t - center); always approximate."""

    coeffs: tuple
    center: float
    order: int

    def __post_init__(self):
        c = [float(x) for x in self.coeffs[: self.order + 1]]
        while c and abs(c[-1]) < COEFF_DROP:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "center", float(self.center))

    @property
    def approx_flag(self):
        return True

    @property
    def is_zero(self):
        return not self.coeffs

    def __call__(self, t):
        return _horner(self.coeffs, t - self.center)

    def _coerce(self, other):
        if isinstance(other, RealPoly):
            return other.recentred(self.center, self.order)
        if isinstance(other, Real):
            return TaylorSeries((float(other),), self.center, self.order)
        if isinstance(other, TaylorSeries):
            if other.center != self.center:
                raise ValueError("TaylorSeries centers differ")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        n = max(len(self.coeffs), len(o.coeffs))
        a = np.zeros(n)
        a[: len(self.coeffs)] = self.coeffs
        a[: len(o.coeffs)] += o.coeffs
        return TaylorSeries(tuple(a[: order + 1]), self.center, order)

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries(tuple(-c for c in self.coeffs), self.center, self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return TaylorSeries(
                tuple(float(other) * c for c in self.coeffs), self.center, self.order
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        if self.is_zero or o.is_zero:
            return TaylorSeries((), self.center, order)
        prod = np.convolve(self.coeffs, o.coeffs)
        return TaylorSeries(tuple(prod[: order + 1]), self.center, order)

    __rmul__ = __mul__

    def derivative(self):
        c = self.coeffs
        d = tuple(k * c[k] for k in range(1, len(c)))
        return TaylorSeries(d, self.center, max(self.order - 1, 0))

    def antiderivative_from(self, t0):
        c = self.coeffs
        q = [0.0] + [c[k] / (k + 1) for k in range(len(c))]
        q[0] = -_horner(tuple(q), float(t0) - self.center)
        return TaylorSeries(tuple(q), self.center, self.order + 1)


def split_mul(a: SplitComplex, b: SplitComplex) -> SplitComplex:
    """Product in the split-complex algebra: (a+k'b)(c+k'd) = ac+bd + k'(ad+bc)."""
    return a * b


def eval_extension(p, z):
    """Evaluate the analytic extension of p at a (split-)complex argument.

    Restriction to im = 0 reproduces real evaluation exactly.
    """
    out = p(z)
    if isinstance(z, SplitComplex) and isinstance(out, Real):
        return SplitComplex(float(out), 0.0)
    if isinstance(z, ComplexScalar) and isinstance(out, Real):
        return ComplexScalar(float(out), 0.0)
    return out


def derive(p):
    return p.derivative()


def antiderive_from(p, t0):
    return p.antiderivative_from(t0)


def series_pow(coeffs, alpha, order):
    """Truncated power (c0 + c1 h + ...)^alpha with c0 > 0, via the
    standard recurrence for formal powers."""
    c = np.zeros(order + 1)
    c[: min(len(coeffs), order + 1)] = coeffs[: order + 1]
    if c[0] <= 0:
        raise ValueError("series_pow needs a positive constant term")
    w = c / c[0]
    s = np.zeros(order + 1)
    s[0] = 1.0
    for k in range(1, order + 1):
        acc = 0.0
        for j in range(1, k + 1):
            acc += ((alpha + 1) * j - k) * w[j] * s[k - j]
        s[k] = acc / k
    return (c[0] ** alpha) * s
