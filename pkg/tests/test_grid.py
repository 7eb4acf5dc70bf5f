"""Stretched momentum grid: nodes, quadrature, interpolation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from vmeson.grid import MomentumGrid


@pytest.fixture(scope="module")
def grid():
    return MomentumGrid.gauss_stretched(64, q_max=30.0, scale=2.0)


def test_nodes_inside_domain_and_increasing(grid):
    assert np.all(grid.nodes > 0)
    assert np.all(grid.nodes < grid.q_max)
    assert np.all(np.diff(grid.nodes) > 0)


def test_integrate_matches_adaptive_quadrature(grid):
    # a smooth decaying integrand typical of bound-state wave functions
    f = lambda q: q * q * np.exp(-1.3 * q) / (1.0 + q * q)
    exact, _ = quad(f, 0.0, grid.q_max, limit=200)
    assert grid.integrate(f(grid.nodes)) == pytest.approx(exact, rel=1e-10)


def test_integrate_is_linear(grid):
    rng = np.random.default_rng(7)
    a, b = rng.normal(size=(2, grid.n))
    lhs = grid.integrate(2.5 * a - 1.5 * b)
    rhs = 2.5 * grid.integrate(a) - 1.5 * grid.integrate(b)
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_interpolation_reproduces_smooth_function(grid):
    f = lambda q: np.exp(-0.8 * q) * np.cos(0.3 * q)
    targets = np.linspace(0.05, 25.0, 301)
    interp = grid.interpolation_matrix(targets)
    err = np.max(np.abs(interp @ f(grid.nodes) - f(targets)))
    assert err < 1e-8


def test_interpolation_exact_at_nodes(grid):
    interp = grid.interpolation_matrix(grid.nodes.copy())
    assert np.allclose(interp, np.eye(grid.n), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=1e-3, max_value=29.9))
def test_t_of_q_is_monotone_map_into_unit_interval(q):
    grid = MomentumGrid.gauss_stretched(16, q_max=30.0, scale=2.0)
    t = grid.t_of_q(np.array([q, q + 1e-4]))
    assert 0.0 < t[0] < 1.0
    assert t[1] > t[0]


def test_meta_round_trip(grid):
    assert grid.meta() == {"n": 64, "q_max": 30.0, "scale": 2.0}
