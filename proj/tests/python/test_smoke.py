import math

import numpy as np
import pytest

import hybridflux as hf


def test_dissipation_functions():
    p2 = hf.solver("P2")
    assert p2.kind == hf.SolverKind.P2
    d = hf.eval_d(p2, np.array([-0.5, 0.8]), -0.5, 0.8)
    np.testing.assert_allclose(d, [0.5, 0.8], atol=1e-14)
    assert hf.eval_d("LaxWendroff", 0.4, -1.0, 1.0) == pytest.approx(0.16)
    a = hf.alpha(-0.5, 0.8)
    assert hf.beta(-0.5, 0.8, 0.3) == pytest.approx(0.3 + 0.7 * a, abs=1e-15)
    assert hf.alpha(0.2, 0.2) is None
    c0, c1, c2 = hf.quad_coeffs("HLL", -1.0, 1.0)
    assert (c0, c1, c2) == pytest.approx((1.0, 0.0, 0.0))


def test_sample_dissipation():
    out = hf.sample_dissipation(["HLL", "P2Omega(0.3)"], -0.5, 0.8, -1.0, 1.0, 11)
    assert out["label"][:1] == ["HLL"]
    assert out["label"][-1] == "P2Omega(0.3)"
    assert out["nu"].shape == (22,)
    assert out["nu"][-1] == 1.0


def test_numerical_flux():
    flux, diag = hf.numerical_flux(hf.AdvectionModel(1.0), "Upwind", [1.0], [-1.0], 0.5)
    assert flux[0] == pytest.approx(1.0)
    assert diag.degenerate_fallbacks == 0

    mhd = hf.MhdModel(1.5)
    ul = hf.mhd_prim_to_cons(3, 0, 0, 0, 3, 1, 1)
    ur = hf.mhd_prim_to_cons(1, 0, 0, 0, 1, math.cos(1.5), math.sin(1.5))
    np.testing.assert_allclose(ul, [3, 0, 0, 0, 1, 1, 5.5], atol=1e-15)
    f, _ = hf.numerical_flux(mhd, hf.SolverSpec(hf.SolverKind.P2Omega, 0.3), ul, ur, 0.375)
    assert f.shape == (7,)
    assert np.all(np.isfinite(f))

    with pytest.raises(hf.UnsupportedKindError):
        hf.numerical_flux(mhd, "Upwind", ul, ur, 0.375)
    with pytest.raises(hf.ConfigError):
        hf.solver("P2Omega(1.5)")


def test_scalar_sweep():
    results = hf.run_scalar_sign_test([0.0, 1.0])
    assert [r.steps for r in results] == [50, 50]
    assert results[0].max_u[-1] <= 1.0 + 1e-12
    assert results[1].max_u[-1] > 1.3
    assert results[0].final.shape == (200, 1)
    assert results[0].x[0] == pytest.approx(-0.995)


def test_mhd_riemann():
    results = hf.run_mhd_riemann(["HLL", "P2"], n_cells=300)
    for r in results:
        assert r.ok, r.error
        assert r.steps == 100
        assert r.conservation_residual < 1e-10
        assert r.final.shape == (300, 7)
        assert r.final[:, 0].min() > 0.0
