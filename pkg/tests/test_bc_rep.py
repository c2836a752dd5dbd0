import numpy as np
import pytest

from bjbi.bc_rep import (BCData, bc_lightlike_decomposition, bc_normal,
                         bc_point, bc_surface, lightlike_defects, load_bc,
                         shared_normal_direction)
from bjbi.errors import DegenerateGenerator, DegeneratePoint, ParseError
from bjbi.geometry_verify import fundamental_forms
from bjbi.lorentz import Vec3L, inner_nd, minkowski_inner
from bjbi.split_scalar import RealPoly

IDENTITY = RealPoly((0.0, 1.0))


def identity_data(grid=(41, 41)):
    return BCData(IDENTITY, IDENTITY, (-1.0, 1.0, -1.0, 1.0), grid)


def random_data(seed, max_degree=6):
    rng = np.random.default_rng(seed)
    def poly():
        deg = int(rng.integers(1, max_degree + 1))
        coeffs = rng.uniform(-1, 1, size=deg + 1)
        coeffs[1] += np.sign(coeffs[1]) + 0.1   # keep the derivative nonzero
        return RealPoly(tuple(coeffs))
    return BCData(poly(), poly(), (-1.0, 1.0, -1.0, 1.0), (21, 21))


def test_bc_point_examples():
    d = identity_data()
    assert bc_point(d, 0, 0) == Vec3L(0.0, 0.0, 0.0)
    p = bc_point(d, 1, 1)
    assert p.x == pytest.approx(1.0, abs=1e-15)
    assert p.y == pytest.approx(2 / 3, abs=1e-15)
    assert p.z == pytest.approx(0.0, abs=1e-15)
    p = bc_point(d, 1, 0)
    assert (p.x, p.y, p.z) == pytest.approx((0.5, 1 / 3, -2 / 3), abs=1e-15)


def test_bc_tangent_displays():
    d = identity_data()
    sample = bc_surface(BCData(IDENTITY, IDENTITY, (1.0, 1.0, 0.0, 0.0), (1, 1)))
    assert np.allclose(sample.Xu[0, 0], [1.0, 0.0, -1.0], atol=1e-15)
    assert np.allclose(sample.Xv[0, 0], [0.0, 0.5, 0.5], atol=1e-15)
    # X_r is lightlike for every r
    full = bc_surface(d)
    rr = inner_nd(full.Xu, full.Xu)
    ss = inner_nd(full.Xv, full.Xv)
    assert np.max(np.abs(rr)) < 1e-13
    assert np.max(np.abs(ss)) < 1e-13


def test_bc_surface_mixed_partial_vanishes():
    sample = bc_surface(identity_data((11, 11)))
    assert np.max(np.abs(sample.Xuv)) == 0.0


def test_bc_normal_examples():
    d = identity_data()
    n10 = bc_normal(d, 1.0, 0.0).as_array()
    # proportional to (1, -1, -1)
    assert np.allclose(n10 / n10[0], [1.0, -1.0, -1.0], atol=1e-13)
    n00 = bc_normal(d, 0.0, 0.0).as_array()
    assert np.allclose(n00, [1.0, 0.0, 0.0], atol=1e-14)
    with pytest.raises(DegeneratePoint):
        bc_normal(d, 1.0, -1.0)


def test_bc_normal_degenerate_generator_point():
    # F = t^2 has F'(0) = 0
    d = BCData(RealPoly((0.0, 0.0, 1.0)), IDENTITY, (-1, 1, -1, 1), (5, 5))
    with pytest.raises(DegeneratePoint):
        bc_normal(d, 0.0, 0.5)


@pytest.mark.parametrize("seed", [11, 22, 33, 44, 55])
def test_bc_normal_independent_of_generators(seed):
    """The unit normal at fixed (r, s) does not depend on (F, G)."""
    d1, d2 = random_data(seed), random_data(seed + 1000)
    probe_r = np.linspace(-0.8, 0.8, 5)
    probe_s = np.linspace(-0.7, 0.7, 5)
    for r in probe_r:
        for s in probe_s:
            try:
                n1 = bc_normal(d1, r, s).as_array()
                n2 = bc_normal(d2, r, s).as_array()
            except DegeneratePoint:
                continue
            if float(np.dot(n1, n2)) < 0:
                n2 = -n2
            assert np.max(np.abs(n1 - n2)) <= 1e-12
            ref = shared_normal_direction(r, s)
            ref = ref / np.sqrt(abs(ref[0] ** 2 + ref[1] ** 2 - ref[2] ** 2))
            if float(np.dot(n1, ref)) < 0:
                ref = -ref
            assert np.max(np.abs(n1 - ref)) <= 1e-12


def test_lightlike_decomposition_example():
    d = identity_data()
    pair = bc_lightlike_decomposition(d)
    assert pair.psi.x == RealPoly((0.0, 0.0, 1.0))
    assert pair.psi.y == RealPoly((0.0, 1.0, 0.0, -1 / 3))
    assert pair.psi.z == RealPoly((0.0, -1.0, 0.0, -1 / 3))
    dpsi = pair.psi.derivative().eval(1.0)
    assert np.allclose(dpsi, [2.0, 0.0, -2.0], atol=1e-15)
    v = Vec3L.from_array(dpsi)
    assert minkowski_inner(v, v) == 0.0


def test_degenerate_generator():
    with pytest.raises(DegenerateGenerator):
        bc_lightlike_decomposition(
            BCData(RealPoly((5.0,)), IDENTITY, (-1, 1, -1, 1), (3, 3)))


@pytest.mark.parametrize("seed", [11, 22, 33, 44, 55])
def test_bc_structure_random_pairs(seed):
    d = random_data(seed)
    dp, df = lightlike_defects(d)
    assert dp <= 1e-12 and df <= 1e-12

    pair = bc_lightlike_decomposition(d)
    sample = bc_surface(d)
    r, s = d.axes()
    R, S = np.meshgrid(r, s, indexing="ij")
    recon = 0.5 * (pair.psi.eval(R) + pair.phi.eval(S))
    scale = 1.0 + np.max(np.abs(sample.X))
    assert np.max(np.linalg.norm(recon - sample.X, axis=-1)) <= 1e-12 * scale

    # psi' = 2 X_r and phi' = 2 X_s along the grid
    dpsi = pair.psi.derivative().eval(r)
    assert np.max(np.abs(dpsi - 2 * sample.Xu[:, 0])) <= 1e-12 * scale
    dphi = pair.phi.derivative().eval(s)
    assert np.max(np.abs(dphi - 2 * sample.Xv[0, :])) <= 1e-12 * scale


@pytest.mark.parametrize("seed", [11, 22, 33, 44, 55])
def test_bc_minimality(seed):
    d = random_data(seed)
    sample = bc_surface(d)
    forms = fundamental_forms(sample)
    sel = sample.valid & ~sample.lightlike & (np.abs(forms.disc) >= 1e-6)
    assert sel.any()
    scale = 1.0 + float(np.max((sample.Xu ** 2).sum(-1) + (sample.Xv ** 2).sum(-1)))
    assert np.nanmax(np.abs(forms.H[sel])) <= 1e-8 * scale
    # timelike wherever nondegenerate
    assert np.all(forms.disc[sel] < 0)


def _implicit_height_field(sample):
    """Exact psi(y, z) derivatives of a graph-like patch by implicit
    differentiation of the (r, s) parametrization (uses X_rs = 0)."""
    Jp = np.stack([np.stack([sample.Xu[..., 1], sample.Xv[..., 1]], -1),
                   np.stack([sample.Xu[..., 2], sample.Xv[..., 2]], -1)], -2)
    Jinv = np.linalg.inv(Jp)
    c = np.stack([sample.Xu[..., 0], sample.Xv[..., 0]], -1)
    grad = np.einsum("...ji,...j->...i", Jinv, c)          # (psi_y, psi_z)

    dJ_r = np.zeros_like(Jp)
    dJ_r[..., 0, 0] = sample.Xuu[..., 1]
    dJ_r[..., 1, 0] = sample.Xuu[..., 2]
    dJ_s = np.zeros_like(Jp)
    dJ_s[..., 0, 1] = sample.Xvv[..., 1]
    dJ_s[..., 1, 1] = sample.Xvv[..., 2]
    dc_r = np.stack([sample.Xuu[..., 0], np.zeros_like(sample.Xuu[..., 0])], -1)
    dc_s = np.stack([np.zeros_like(sample.Xvv[..., 0]), sample.Xvv[..., 0]], -1)

    def dgrad(dJ, dc):
        term1 = -np.einsum("...ji,...kj,...kl,...l->...i", Jinv, dJ, Jinv, c)
        term2 = np.einsum("...ji,...j->...i", Jinv, dc)
        return term1 + term2

    cols = np.stack([dgrad(dJ_r, dc_r), dgrad(dJ_s, dc_s)], -1)
    H = np.einsum("...ik,...kj->...ij", cols, Jinv)
    return grad[..., 0], grad[..., 1], H[..., 0, 0], H[..., 0, 1], H[..., 1, 0], H[..., 1, 1]


@pytest.mark.parametrize("seed", [11, 22, 33])
def test_bc_height_solves_born_infeld(seed):
    """The height of a graph-like patch satisfies the soliton equation;
    derivative fields come from exact implicit differentiation, not fits."""
    rng = np.random.default_rng(seed)
    d = BCData(RealPoly((0.0, 1.0, float(rng.uniform(-0.2, 0.2)))),
               RealPoly((0.0, 1.0, float(rng.uniform(-0.2, 0.2)))),
               (-0.6, 0.6, -0.6, 0.6), (31, 31))
    sample = bc_surface(d)
    py, pz, pyy, pyz, pzy, pzz = _implicit_height_field(sample)
    assert np.max(np.abs(pyz - pzy)) <= 1e-10          # Hessian symmetry
    timelike = py ** 2 - pz ** 2 + 1.0
    assert np.all(timelike > 0.1)
    R = (1 - pz ** 2) * pyy + 2 * py * pz * pyz - (1 + py ** 2) * pzz
    scale = 1.0 + float(np.max(np.abs(pyy)) + np.max(np.abs(pzz)))
    assert np.max(np.abs(R)) <= 1e-10 * scale


def test_single_node_surface():
    d = BCData(IDENTITY, IDENTITY, (0.0, 0.0, 0.0, 0.0), (1, 1))
    sample = bc_surface(d)
    assert sample.X.shape == (1, 1, 3)
    assert np.allclose(sample.X[0, 0], 0.0)


def test_load_bc_errors(tmp_path, fixture_path):
    d = load_bc(fixture_path("bc_identity.toml"))
    assert d.F == IDENTITY and d.grid == (41, 41)
    bad = tmp_path / "bad.toml"
    bad.write_text("F = [0.0, 1.0]\ndomain = [0, 1, 0, 1]\ngrid = [3, 3]\n")
    with pytest.raises(ParseError):
        load_bc(str(bad))
    bad.write_text("F = [0.0, 1.0]\nG = [0.0, 1.0]\ndomain = [0, 1]\ngrid = [3, 3]\n")
    with pytest.raises(ParseError):
        load_bc(str(bad))
