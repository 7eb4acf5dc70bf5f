"""Gamma-matrix algebra, energy projectors, and the 1^- basis."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vmeson.dirac import (
    IDENTITY,
    METRIC,
    REPRESENTATIONS,
    SingularBasisError,
    ansatz_matrix,
    anticommutator,
    gamma,
    gram_duals,
    in_span_residual,
    projector,
    slash,
    trace_project,
    wave_basis,
)

RNG = np.random.default_rng(42)


@pytest.mark.parametrize("rep", REPRESENTATIONS)
def test_clifford_algebra(rep):
    for mu in range(4):
        for nu in range(4):
            acomm = anticommutator(gamma(mu, rep), gamma(nu, rep))
            expected = 2.0 * METRIC[mu, nu] * IDENTITY
            assert np.abs(acomm - expected).max() < 1e-12


@pytest.mark.parametrize("rep", REPRESENTATIONS)
def test_slash_squares_to_invariant(rep):
    v = np.array([1.7, 0.3, -0.9, 0.4])
    v2 = v @ METRIC @ v
    sq = slash(v, rep) @ slash(v, rep)
    assert np.abs(sq - v2 * IDENTITY).max() < 1e-12


@pytest.mark.parametrize("rep", REPRESENTATIONS)
@pytest.mark.parametrize("quark_index", [1, 2])
def test_projector_identities(rep, quark_index):
    m, M = 1.7551, 3.1
    q_t = np.array([0.05, 0.7, 3.2])
    proj = projector(quark_index, m, q_t, M, rep)
    g0 = gamma(0, rep)
    # completeness: Lambda+ + Lambda- = gamma0
    assert np.abs(proj.plus + proj.minus - g0).max() < 1e-12
    # idempotence and orthogonality under the gamma0 product
    pg = proj.plus @ g0
    mg = proj.minus @ g0
    assert np.abs(pg @ proj.plus - proj.plus).max() < 1e-12
    assert np.abs(mg @ proj.minus - proj.minus).max() < 1e-12
    assert np.abs(pg @ proj.minus).max() < 1e-12
    assert np.abs(proj.omega - np.hypot(m, q_t)).max() < 1e-14


def test_projector_rejects_bad_input():
    with pytest.raises(ValueError):
        projector(3, 1.0, np.array([1.0]), 3.0)
    with pytest.raises(ValueError):
        projector(1, -1.0, np.array([1.0]), 3.0)
    with pytest.raises(ValueError):
        projector(1, 1.0, np.array([-1.0]), 3.0)


def test_wave_basis_is_linearly_independent_off_origin():
    k = np.array([0.3, -0.2, 0.9])
    eps = np.array([1.0, 0.0, 0.0])
    basis = wave_basis(k, eps)
    flat = basis.reshape(8, 16)
    assert np.linalg.matrix_rank(flat) == 8


def test_gram_duals_extract_exact_coefficients():
    k = np.array([0.1, 0.5, -0.4])
    eps = np.array([0.0, 1.0, 0.0])
    basis = wave_basis(k, eps)
    duals, cond = gram_duals(basis)
    coeff = RNG.normal(size=8)
    target = np.einsum("b,bij->ij", coeff, basis)
    extracted = np.einsum("bij,ij->b", duals.conj(), target)
    assert np.abs(extracted - coeff).max() < 1e-10 * cond


def test_gram_duals_degenerate_at_origin():
    basis = wave_basis(np.zeros(3), np.array([1.0, 0.0, 0.0]))
    with pytest.raises(SingularBasisError):
        gram_duals(basis)


def test_ansatz_round_trip():
    f = RNG.normal(size=8)
    q = np.array([0.2, -0.6, 1.1])
    eps = np.array([0.0, 0.0, 1.0])
    M = 3.2
    mat = ansatz_matrix(f, q, eps, M)
    back = trace_project(mat, q, eps, M)
    assert np.abs(back - f).max() < 1e-9


@pytest.mark.parametrize("rep", REPRESENTATIONS)
def test_in_span_residual(rep):
    k = np.array([0.4, 0.1, 0.8])
    eps = np.array([1.0, 0.0, 0.0])
    basis = wave_basis(k, eps, rep)
    inside = np.einsum("b,bij->ij", RNG.normal(size=8), basis)
    assert in_span_residual(inside, basis) < 1e-12
    outside = gamma(1, rep) @ gamma(2, rep) @ gamma(3, rep)
    assert in_span_residual(outside, basis) > 1e-3


def test_polarization_validation():
    f = np.ones(8)
    q = np.array([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        ansatz_matrix(f, q, np.array([1.0, 0.0, 0.0, 0.0]), 3.0)  # eps^0 != 0
    with pytest.raises(ValueError):
        ansatz_matrix(f, q, np.zeros(3), 3.0)
    # transverse four-vector form is accepted
    ansatz_matrix(f, q, np.array([0.0, 1.0, 0.0, 0.0]), 3.0)


@settings(max_examples=25, deadline=None)
@given(
    st.floats(min_value=-2, max_value=2),
    st.floats(min_value=-2, max_value=2),
    st.floats(min_value=0.1, max_value=2),
)
def test_representation_independent_traces(kx, ky, kz):
    """Tr[B_a^dag B_b] is basis-independent, so spectra cannot depend on rep."""
    k = np.array([kx, ky, kz])
    eps = np.array([1.0, 0.0, 0.0])
    grams = [
        np.einsum("aij,bij->ab", wave_basis(k, eps, rep).conj(), wave_basis(k, eps, rep))
        for rep in REPRESENTATIONS
    ]
    assert np.abs(grams[0] - grams[1]).max() < 1e-10
