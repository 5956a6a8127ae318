"""Maxwellian velocity averaging: quadratures, fallbacks, hot response."""

import numpy as np
import pytest
from scipy.special import erfc

from chiralight import errors
from chiralight.doppler import (COLD_WIDTH, QuadratureSpec, doppler_average,
                                hot_response)
from chiralight.params import MediumParams, SystemParams, validate
from chiralight.response import response_at

# closed form of (1/sqrt(pi)) * integral exp(-u^2)/(1 + i*u) du
LORENTZ_AVG = float(np.sqrt(np.pi) * np.e * erfc(1.0))

ADAPTIVE = QuadratureSpec(method="adaptive-trapezoid", truncation=6.0)


def _cfg(system=None, medium=None):
    return validate(SystemParams(**(system or {})), MediumParams(**(medium or {})))


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(node_count=4)
    with pytest.raises(ValueError):
        QuadratureSpec(truncation=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=-1.0)
    with pytest.raises(ValueError, match="method"):
        doppler_average(lambda kv: np.ones_like(kv), 1.0,
                        QuadratureSpec(method="monte-carlo"))


@pytest.mark.parametrize("spec", [QuadratureSpec(), ADAPTIVE])
def test_constant_integrand_normalization(spec):
    c = 2.3 - 0.7j
    for v_d in (0.01, 0.5, 3.0):
        got = doppler_average(lambda kv: np.full_like(kv, c, dtype=complex),
                              v_d, spec)
        assert got == pytest.approx(c, rel=1e-12)


@pytest.mark.parametrize("spec", [QuadratureSpec(), ADAPTIVE])
def test_odd_integrand_vanishes(spec):
    got = doppler_average(lambda kv: kv.astype(complex), 1.3, spec)
    assert abs(got) < 1e-12


@pytest.mark.parametrize("spec", [QuadratureSpec(), ADAPTIVE])
def test_lorentzian_golden_value(spec):
    got = doppler_average(lambda kv: 1.0 / (1.0 + 1j * kv), 1.0, spec)
    assert got.real == pytest.approx(LORENTZ_AVG, rel=1e-8)
    assert abs(got.imag) < 1e-10


def test_dual_quadrature_methods_agree():
    f = lambda kv: 1.0 / (1.0 + 1j * kv)
    tight = 1e-10
    gh = doppler_average(f, 1.0, QuadratureSpec(rel_tol=tight))
    tz = doppler_average(
        f, 1.0, QuadratureSpec(method="adaptive-trapezoid", truncation=8.0,
                               rel_tol=tight, max_nodes=1 << 17))
    assert abs(gh - tz) / abs(gh) < 1e-8


def test_cold_shortcut_is_exact():
    calls = []

    def f(kv):
        calls.append(np.asarray(kv).copy())
        return 1.0 / (1.0 + 1j * kv)

    got = doppler_average(f, 0.5 * COLD_WIDTH)
    assert got == 1.0 + 0.0j  # f evaluated only at kv = 0
    assert len(calls) == 1 and np.all(calls[0] == 0.0)


def test_tuple_integrands_average_together():
    f = lambda kv: (np.ones_like(kv, dtype=complex), kv.astype(complex))
    const, odd = doppler_average(f, 0.7)
    assert const == pytest.approx(1.0, rel=1e-12)
    assert abs(odd) < 1e-12


def test_averaging_is_linear():
    f = lambda kv: 1.0 / (1.0 + 1j * kv)
    g = lambda kv: np.exp(1j * kv)
    a, b = 1.7, -0.4 + 0.2j
    spec = QuadratureSpec(rel_tol=1e-10)
    combined = doppler_average(lambda kv: a * f(kv) + b * g(kv), 1.0, spec)
    separate = a * doppler_average(f, 1.0, spec) + b * doppler_average(g, 1.0, spec)
    assert combined == pytest.approx(separate, rel=1e-9)


def test_reflection_invariance_of_average(subluminal_cfg):
    """The even weight makes the average blind to kv -> -kv relabeling
    (the co/counter-propagation bookkeeping must not break this)."""
    def comps(kv):
        return response_at(subluminal_cfg, kv, delta_p=0.3).components()

    def comps_reflected(kv):
        return response_at(subluminal_cfg, -kv, delta_p=0.3).components()

    fwd = doppler_average(comps, 0.5)
    rev = doppler_average(comps_reflected, 0.5)
    for a, b in zip(fwd, rev):
        assert a == pytest.approx(b, rel=1e-9)


def test_node_doubling_converged(subluminal_cfg):
    """Doubling the starting node count moves the result below rel_tol."""
    def comps(kv):
        return response_at(subluminal_cfg, kv, delta_p=0.2).components()

    a = doppler_average(comps, 0.5, QuadratureSpec(node_count=64))
    b = doppler_average(comps, 0.5, QuadratureSpec(node_count=128))
    for x, y in zip(a, b):
        assert abs(x - y) <= 1e-8 * max(abs(x), abs(y), 1e-30)


def test_gauss_hermite_falls_back_to_adaptive():
    """An integrand unevaluable at the far Gauss-Hermite nodes still
    averages via the truncated adaptive rule."""
    window = 4.0  # default truncation, units of v_d

    def f(kv):
        if np.any(np.abs(kv) > window + 0.5):
            raise errors.SingularSystem("outside truncated window")
        return 1.0 / (1.0 + 1j * kv)

    got = doppler_average(f, 1.0)
    assert got.real == pytest.approx(LORENTZ_AVG, rel=1e-6)


def test_pole_in_support_after_all_fallbacks():
    def f(kv):
        raise errors.SingularSystem("pole pinned to the real axis")

    with pytest.raises(errors.PoleInSupport):
        doppler_average(f, 1.0)


def test_quadrature_not_converged():
    # a single refinement level can never satisfy the two-level check
    spec = QuadratureSpec(node_count=64, max_nodes=64)
    with pytest.raises(errors.QuadratureNotConverged):
        doppler_average(lambda kv: 1.0 / (1.0 + 1j * kv), 1.0, spec)


def test_hot_response_cold_limit(subluminal_cfg, default_cfg):
    from chiralight.params import with_overrides
    tiny = with_overrides(subluminal_cfg, medium={"v_doppler": 1e-7})
    grid = np.linspace(-2, 2, 41)
    hot = hot_response(tiny, grid)
    cold = response_at(tiny, 0.0, delta_p=grid)
    for a, b in zip(hot.components(), cold.components()):
        err = np.max(np.abs(np.asarray(a) - np.asarray(b)))
        assert err <= 1e-6 * np.max(np.abs(np.asarray(b)))


def test_hot_absorption_exceeds_cold_at_resonance(subluminal_cfg):
    cold = response_at(subluminal_cfg, 0.0)
    hot = hot_response(subluminal_cfg, 0.0)
    assert float(np.asarray(hot.chi_e).imag) > float(np.asarray(cold.chi_e).imag)


def test_hot_response_scalar_and_chunked_grid_agree(subluminal_cfg):
    grid = np.linspace(-1, 1, 5)
    quad = QuadratureSpec(max_nodes=16384)  # chunk size 61 at this budget
    full = hot_response(subluminal_cfg, grid, quad=quad)
    for i, d in enumerate(grid):
        one = hot_response(subluminal_cfg, float(d), quad=quad)
        assert np.asarray(full.chi_e)[i] == pytest.approx(
            complex(np.asarray(one.chi_e)), rel=1e-9)
        assert np.isscalar(np.asarray(one.chi_e).item())


def test_thermal_width_family_is_monotone_at_resonance():
    """Stepping V_D in the strong-drive family raises the resonance
    absorption monotonically (re-filling of the transparency window)."""
    vals = []
    for vd in (0.0, 0.1, 0.2, 0.3):
        cfg = _cfg(system={"omega_2": 4.0}, medium={"v_doppler": vd})
        vals.append(float(np.asarray(hot_response(cfg, 0.0).chi_e).imag))
    assert all(b > a for a, b in zip(vals, vals[1:]))
