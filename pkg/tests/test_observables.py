"""Decay constants, ratios, and the parameter-variation scan."""

import numpy as np
import pytest

from vmeson.channels import CHANNELS
from vmeson.observables import (
    DecayConstantResult,
    decay_constant,
    decay_ratio,
    uncertainty_scan,
)
from vmeson.solver import VectorWaveFunction


def test_decay_constant_requires_normalized(dsu_small):
    wf = dsu_small.states[0].wf
    raw = VectorWaveFunction(
        grid=wf.grid, mass=wf.mass, g=wf.g.copy(), m1=wf.m1, m2=wf.m2
    )
    with pytest.raises(ValueError):
        decay_constant(raw)


def test_decay_constant_positive_and_in_mev(dsu_small):
    value = decay_constant(dsu_small.states[0].wf)
    assert 100.0 < value < 1500.0  # MeV scale, not GeV
    assert value == pytest.approx(1000.0 * dsu_small.states[0].f_v, rel=1e-12)


def test_decay_constant_vanishes_without_f5(dsu_small):
    wf = dsu_small.states[0].wf
    g = wf.g.copy()
    g[2] = 0.0  # kill g5 = M f5; f3, f4, f6 untouched
    zeroed = VectorWaveFunction(
        grid=wf.grid, mass=wf.mass, g=g, m1=wf.m1, m2=wf.m2, normalized=True
    )
    assert decay_constant(zeroed) == 0.0


def test_decay_constant_result_invariants():
    DecayConstantResult(300.0, 20.0, "1S", "D*_u")
    with pytest.raises(ValueError):
        DecayConstantResult(-1.0, 20.0, "1S", "D*_u")
    with pytest.raises(ValueError):
        DecayConstantResult(300.0, -1.0, "1S", "D*_u")


def test_decay_ratio_of_state_with_itself():
    x = DecayConstantResult(300.0, 20.0, "1S", "D*_u")
    ratio, unc = decay_ratio(x, x, correlated_samples=[(280.0, 280.0), (315.0, 315.0)])
    assert ratio == 1.0
    assert unc == 0.0


def test_decay_ratio_quadrature():
    a = DecayConstantResult(375.0, 24.0, "1S", "D*_s")
    b = DecayConstantResult(339.0, 22.0, "1S", "D*_u")
    ratio, unc = decay_ratio(a, b)
    assert ratio == pytest.approx(375.0 / 339.0)
    expected = ratio * np.hypot(24.0 / 375.0, 22.0 / 339.0)
    assert unc == pytest.approx(expected)


def test_decay_ratio_accepts_external_pseudoscalar_value():
    vector = DecayConstantResult(459.0, 28.0, "1S", "ccbar")
    ratio, unc = decay_ratio(vector, (292.0, 25.0))
    assert ratio == pytest.approx(459.0 / 292.0)
    assert unc > 0


def test_decay_ratio_zero_denominator():
    a = DecayConstantResult(300.0, 20.0, "1S", "D*_u")
    with pytest.raises(ZeroDivisionError):
        decay_ratio(a, (0.0, 0.0))


def test_scan_zero_fraction_gives_zero_uncertainty():
    res = uncertainty_scan(CHANNELS["D*_u"], fraction=0.0, n_states=1, grid_n=32)
    assert res.decay[0].uncertainty == 0.0
    assert res.mass_spread_mev == [0.0]


def test_scan_validates_inputs():
    with pytest.raises(ValueError):
        uncertainty_scan(CHANNELS["D*_u"], fraction=0.6)
    with pytest.raises(ValueError):
        uncertainty_scan(CHANNELS["D*_u"], sampler="lhs")
    with pytest.raises(ValueError):
        uncertainty_scan(
            CHANNELS["ccbar"],
            exclude=("a", "alpha", "v0", "lam", "lambda_qcd", "c"),
        )


@pytest.fixture(scope="module")
def small_scans():
    """Two cheap scans over a reduced parameter set at two fractions."""
    exclude = ("a", "alpha", "v0", "lambda_qcd")  # keep lam and the masses
    kwargs = dict(n_states=1, grid_n=32, q_max=25.0, exclude=exclude)
    lo = uncertainty_scan(CHANNELS["D*_u"], fraction=0.05, **kwargs)
    hi = uncertainty_scan(CHANNELS["D*_u"], fraction=0.10, **kwargs)
    return lo, hi


def test_scan_uncertainty_monotone_in_fraction(small_scans):
    lo, hi = small_scans
    assert hi.decay[0].uncertainty >= lo.decay[0].uncertainty
    assert hi.mass_spread_mev[0] >= lo.mass_spread_mev[0]


def test_scan_sample_accounting(small_scans):
    lo, _ = small_scans
    # three varied parameters (lam, m_c, m_u) -> 8 corners + center
    assert lo.decay[0].n_scan_samples == 9
    assert lo.n_failed == 0
    assert len(lo.samples_f_v[0]) == 8


def test_grid_sampler_contains_corner_extremes():
    exclude = ("a", "alpha", "v0", "lambda_qcd", "c")  # vary lam and m_u only
    kwargs = dict(n_states=1, grid_n=32, q_max=25.0, exclude=exclude, fraction=0.1)
    corner = uncertainty_scan(CHANNELS["D*_u"], sampler="corner", **kwargs)
    grid = uncertainty_scan(CHANNELS["D*_u"], sampler="grid", **kwargs)
    assert grid.decay[0].uncertainty >= corner.decay[0].uncertainty - 1e-9
    assert len(grid.samples_f_v[0]) == 8  # 3^2 - 1 levels
    assert len(corner.samples_f_v[0]) == 4


def test_f_v_decreases_with_radial_excitation(ccbar_tower):
    s_states = [st for st in ccbar_tower.states if st.label.endswith("S")]
    values = [st.f_v for st in s_states]
    assert all(a > b for a, b in zip(values, values[1:]))
