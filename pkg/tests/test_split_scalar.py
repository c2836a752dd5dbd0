import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjbi.split_scalar import (IMAG_UNIT, SPLIT_UNIT, ComplexScalar, RealPoly,
                               SplitComplex, TaylorSeries, antiderive_from,
                               derive, eval_extension, series_pow, split_mul)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
splits = st.builds(SplitComplex, finite, finite)
complexes = st.builds(ComplexScalar, finite, finite)


def approx_eq(a, b, tol=1e-9):
    return abs(a.re - b.re) <= tol and abs(a.im - b.im) <= tol


def test_split_unit_squares_to_one():
    assert split_mul(SPLIT_UNIT, SPLIT_UNIT) == SplitComplex(1.0, 0.0)


def test_zero_divisor():
    z = split_mul(SplitComplex(1, 1), SplitComplex(1, -1))
    assert z == SplitComplex(0.0, 0.0)


def test_split_product_by_hand():
    # (2 + k')(1 + 3k') = (2 + 3) + k'(6 + 1)
    assert split_mul(SplitComplex(2, 1), SplitComplex(1, 3)) == SplitComplex(5.0, 7.0)


def test_imaginary_unit_squares_to_minus_one():
    assert IMAG_UNIT * IMAG_UNIT == ComplexScalar(-1.0, 0.0)


def test_conjugation_modulus():
    z = SplitComplex(3.0, 2.0)
    assert z.conj() == SplitComplex(3.0, -2.0)
    prod = z * z.conj()
    assert prod == SplitComplex(z.modulus_sq(), 0.0)
    assert z.modulus_sq() == 5.0
    w = ComplexScalar(3.0, 2.0)
    assert w.modulus_sq() == 13.0


def test_eval_extension_square_split():
    p = RealPoly((0.0, 0.0, 1.0))
    z = SplitComplex(1.25, -0.5)
    out = eval_extension(p, z)
    assert out == SplitComplex(1.25**2 + 0.5**2, 2 * 1.25 * -0.5)


def test_eval_extension_constant():
    p = RealPoly((4.5,))
    assert eval_extension(p, SplitComplex(2.0, 3.0)) == SplitComplex(4.5, 0.0)
    assert eval_extension(p, ComplexScalar(2.0, 3.0)) == ComplexScalar(4.5, 0.0)


def test_eval_extension_square_complex():
    p = RealPoly((0.0, 0.0, 1.0))
    z = ComplexScalar(0.75, 2.0)
    assert eval_extension(p, z) == ComplexScalar(0.75**2 - 4.0, 2 * 0.75 * 2.0)


def test_real_axis_evaluation_has_exactly_zero_im():
    p = RealPoly((0.3, -1.7, 0.0, 2.2, -0.9))
    for t in np.linspace(-3, 3, 37):
        out = eval_extension(p, SplitComplex(float(t), 0.0))
        assert out.im == 0.0
        assert out.re == p(float(t))


def test_derive_antiderive():
    cubic = RealPoly((0.0, 0.0, 0.0, 1.0))
    assert derive(cubic) == RealPoly((0.0, 0.0, 3.0))
    assert antiderive_from(RealPoly((0.0, 0.0, 3.0)), 0.0) == cubic
    # constant 1, lower limit 2 forces t - 2
    assert antiderive_from(RealPoly((1.0,)), 2.0) == RealPoly((-2.0, 1.0))


def test_antiderivative_vanishes_at_lower_limit():
    p = RealPoly((1.0, -2.0, 0.5, 3.0))
    for t0 in (-1.5, 0.0, 0.7):
        q = p.antiderivative_from(t0)
        assert abs(q(t0)) < 1e-13
        assert derive(q) == p


def test_canonicalization_drops_trailing_noise():
    p = RealPoly((1.0, 2.0, 1e-15))
    assert p.degree == 1
    assert RealPoly((0.0,)).is_zero
    q = RealPoly((0.0, 1.0)) * RealPoly((0.0, 1.0)) - RealPoly((0.0, 0.0, 1.0))
    assert q.is_zero


@given(splits, splits, splits)
@settings(max_examples=300)
def test_split_ring_axioms(a, b, c):
    assert a * b == b * a
    assert a + b == b + a
    lhs = (a * b) * c
    rhs = a * (b * c)
    scale = 1.0 + max(abs(v) for z in (a, b, c) for v in (z.re, z.im)) ** 3
    assert approx_eq(lhs, rhs, 1e-12 * scale)
    lhs = a * (b + c)
    rhs = a * b + a * c
    assert approx_eq(lhs, rhs, 1e-12 * scale)


@given(complexes, complexes, complexes)
@settings(max_examples=300)
def test_complex_ring_axioms(a, b, c):
    assert a * b == b * a
    scale = 1.0 + max(abs(v) for z in (a, b, c) for v in (z.re, z.im)) ** 3
    assert approx_eq((a * b) * c, a * (b * c), 1e-12 * scale)
    assert approx_eq(a * (b + c), a * b + a * c, 1e-12 * scale)


@given(st.lists(st.floats(min_value=-3, max_value=3, allow_nan=False), min_size=1, max_size=6),
       st.floats(min_value=-1.5, max_value=1.5, allow_nan=False),
       st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
@settings(max_examples=150)
def test_split_cauchy_riemann_by_central_differences(coeffs, u, v):
    """dRe/du = dIm/dv and dRe/dv = dIm/du for split-holomorphic extensions,
    checked by central differences against the exact derivative polynomial."""
    p = RealPoly(tuple(coeffs))
    dp = p.derivative()
    h = 1e-4
    scale = 1.0 + sum(abs(c) for c in coeffs) * (1 + abs(u) + abs(v)) ** max(p.degree, 1)

    def F(uu, vv):
        return eval_extension(p, SplitComplex(uu, vv))

    re_u = (F(u + h, v).re - F(u - h, v).re) / (2 * h)
    re_v = (F(u, v + h).re - F(u, v - h).re) / (2 * h)
    im_u = (F(u + h, v).im - F(u - h, v).im) / (2 * h)
    im_v = (F(u, v + h).im - F(u, v - h).im) / (2 * h)
    exact = eval_extension(dp, SplitComplex(u, v))
    assert re_u == pytest.approx(exact.re, abs=1e-8 * scale)
    assert im_v == pytest.approx(exact.re, abs=1e-8 * scale)
    assert re_v == pytest.approx(exact.im, abs=1e-8 * scale)
    assert im_u == pytest.approx(exact.im, abs=1e-8 * scale)
    assert re_u == pytest.approx(im_v, abs=1e-8 * scale)
    assert re_v == pytest.approx(im_u, abs=1e-8 * scale)


def test_taylor_series_basics():
    # sin about 0 to order 11
    coeffs = [0.0] * 12
    for k in (1, 3, 5, 7, 9, 11):
        coeffs[k] = (-1.0) ** ((k - 1) // 2) / math.factorial(k)
    s = TaylorSeries(tuple(coeffs), 0.0, 11)
    assert s.approx_flag
    for t in np.linspace(-1, 1, 11):
        assert s(float(t)) == pytest.approx(math.sin(t), abs=1e-9)
    c = s.derivative()
    for t in np.linspace(-1, 1, 11):
        assert c(float(t)) == pytest.approx(math.cos(t), abs=1e-8)
    back = c.antiderivative_from(0.0)
    for t in np.linspace(-1, 1, 11):
        assert back(float(t)) == pytest.approx(math.sin(t), abs=1e-8)


def test_taylor_mul_truncates_to_min_order():
    a = TaylorSeries((1.0, 1.0, 1.0), 0.0, 4)
    b = TaylorSeries((1.0, 2.0), 0.0, 2)
    prod = a * b
    assert prod.order == 2
    assert len(prod.coeffs) <= 3


def test_taylor_mixed_with_poly_promotes():
    p = RealPoly((1.0, 1.0))
    s = TaylorSeries((2.0, 0.0, 1.0), 0.5, 6)
    out = p * s
    assert isinstance(out, TaylorSeries)
    for t in (0.2, 0.5, 0.9):
        assert out(t) == pytest.approx(p(t) * s(t), rel=1e-12)


def test_recentred_poly_evaluates_identically():
    p = RealPoly((3.0, -1.0, 0.25, 2.0))
    s = p.recentred(0.75)
    for t in np.linspace(-2, 2, 17):
        assert s(float(t)) == pytest.approx(p(float(t)), rel=1e-13, abs=1e-13)


def test_series_pow_inverse_sqrt():
    # (1 + h)^(-1/2) = 1 - h/2 + 3h^2/8 - 5h^3/16 + ...
    out = series_pow(np.array([1.0, 1.0]), -0.5, 3)
    assert np.allclose(out, [1.0, -0.5, 0.375, -0.3125], atol=1e-14)
    # (4 + 4h + h^2)^(-1/2) = 1/(2 + h) = 0.5 - 0.25 h + 0.125 h^2 - ...
    out = series_pow(np.array([4.0, 4.0, 1.0]), -0.5, 3)
    assert np.allclose(out, [0.5, -0.25, 0.125, -0.0625], atol=1e-14)
