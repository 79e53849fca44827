import math

import numpy as np
import pytest

from wzterm.flatfam import (
    DiscreteTorusMap,
    GridError,
    curvature_residual,
    energy_numeric,
    family_at,
    killing_norm_check,
    pullback_mc,
    quaternions_to_su2,
)


def perturbed_clifford(nx: int, ny: int, eps: float = 0.01) -> DiscreteTorusMap:
    """Clifford map left-multiplied by a smooth non-harmonic unit-quaternion field."""
    base = DiscreteTorusMap.clifford(nx, ny)
    x = 2.0 * np.pi * np.arange(nx) / nx
    y = 2.0 * np.pi * np.arange(ny) / ny
    X, Y = np.meshgrid(x, y, indexing="ij")
    f = eps * np.sin(X + 2.0 * Y)
    cf, sf = np.cos(f), np.sin(f)
    a, b, c, d = (base.q[..., k] for k in range(4))
    q = np.stack(
        [cf * a - sf * b, cf * b + sf * a, cf * c - sf * d, cf * d + sf * c],
        axis=-1,
    )
    return DiscreteTorusMap(nx=nx, ny=ny, q=q)


def test_quaternion_matrix_map():
    m = quaternions_to_su2(np.array([1.0, 0.0, 0.0, 0.0]))
    assert np.allclose(m, np.eye(2))
    m = quaternions_to_su2(np.array([0.0, 1.0, 0.0, 0.0]))
    assert np.allclose(m, np.diag([1j, -1j]))
    # unit quaternions land in SU(2)
    rng = np.random.default_rng(7)
    q = rng.standard_normal((50, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    g = quaternions_to_su2(q)
    assert np.allclose(np.linalg.det(g), 1.0)
    assert np.allclose(g @ np.conj(np.swapaxes(g, -1, -2)), np.eye(2), atol=1e-12)


def test_killing_norm():
    assert killing_norm_check() == pytest.approx(-8.0)


def test_grid_validation():
    with pytest.raises(GridError):
        DiscreteTorusMap(nx=4, ny=4, q=np.zeros((4, 4, 4)))
    bad = np.full((8, 8, 4), 0.5)
    bad[0, 0] *= 1.1
    with pytest.raises(GridError):
        DiscreteTorusMap(nx=8, ny=8, q=bad)


def test_clifford_connection_homogeneous():
    m = DiscreteTorusMap.clifford(64, 64)
    a = pullback_mc(m)
    assert a.projection_residual < 1e-8
    # the map is homogeneous, so the energy density is constant over the grid
    def density(comp):
        return np.real(np.einsum("...ij,...ji->...", comp, comp))

    for comp in (a.ax, a.ay):
        d = density(comp)
        assert float(np.max(np.abs(d - d[0, 0]))) < 1e-9


def test_clifford_energy_value_and_convergence():
    expect = 16.0 * math.pi**2
    e64 = energy_numeric(DiscreteTorusMap.clifford(64, 64))
    e128 = energy_numeric(DiscreteTorusMap.clifford(128, 128))
    assert abs(e64 - expect) / expect < 1e-5
    assert abs(e128 - expect) / expect < 1e-6
    # fourth-order differences: error drops by about 16x per doubling
    assert abs(e128 - expect) < abs(e64 - expect) / 8.0


def test_family_endpoints():
    m = DiscreteTorusMap.clifford(32, 32)
    a = pullback_mc(m)
    at0 = family_at(a, 0.0)
    assert float(np.max(np.abs(at0.ax))) < 1e-12
    assert float(np.max(np.abs(at0.ay))) < 1e-12
    at_pi = family_at(a, math.pi)
    assert np.allclose(at_pi.ax, a.ax, atol=1e-12)
    assert np.allclose(at_pi.ay, a.ay, atol=1e-12)


def test_family_connections_su2_valued():
    m = DiscreteTorusMap.clifford(32, 32)
    a = pullback_mc(m)
    for theta in (0.7, 1.9, 4.4):
        at = family_at(a, theta)
        for comp in (at.ax, at.ay):
            anti = comp + np.conj(np.swapaxes(comp, -1, -2))
            tr = np.trace(comp, axis1=-2, axis2=-1)
            assert float(np.max(np.abs(anti))) < 1e-12
            assert float(np.max(np.abs(tr))) < 1e-12


def test_clifford_family_flat_with_refinement():
    residuals = [
        max(
            curvature_residual(family_at(pullback_mc(DiscreteTorusMap.clifford(n, n)), th))
            for th in (0.8, 2.1, 3.9, 5.6)
        )
        for n in (32, 64, 128)
    ]
    # second-order decay
    assert residuals[1] < residuals[0] / 3.0
    assert residuals[2] < residuals[1] / 3.0
    assert residuals[2] < 1e-2


def test_perturbed_map_not_flat():
    # smooth non-harmonic perturbation: residual plateaus instead of decaying
    r64 = max(
        curvature_residual(family_at(pullback_mc(perturbed_clifford(64, 64)), th))
        for th in (0.8, 2.1)
    )
    r128 = max(
        curvature_residual(family_at(pullback_mc(perturbed_clifford(128, 128)), th))
        for th in (0.8, 2.1)
    )
    assert r128 > 0.9 * r64
    assert r128 > 1e-2


def test_rough_grid_rejected():
    rng = np.random.default_rng(3)
    q = rng.standard_normal((16, 16, 4))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    with pytest.raises(GridError):
        pullback_mc(DiscreteTorusMap(nx=16, ny=16, q=q))


def test_json_roundtrip():
    m = DiscreteTorusMap.clifford(8, 8)
    d = {"nx": 8, "ny": 8, "q": m.q.reshape(-1, 4).tolist()}
    m2 = DiscreteTorusMap.from_json_dict(d)
    assert np.allclose(m2.q, m.q)
