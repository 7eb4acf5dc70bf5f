"""Exact 4x4 gamma-matrix arithmetic in the bound-state rest frame.

Metric signature is (+,-,-,-), so a purely spatial four-vector squares to
minus its Euclidean length.  The default representation is the standard
Dirac basis; a Weyl basis is provided so that physical outputs can be
checked for representation independence.

All functions broadcast over leading axes: four-vectors have shape
``(..., 4)`` and matrices ``(..., 4, 4)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "gamma",
    "slash",
    "anticommutator",
    "EnergyProjector",
    "projector",
    "wave_basis",
    "ansatz_matrix",
    "trace_project",
    "SingularBasisError",
    "REPRESENTATIONS",
]

_ID2 = np.eye(2, dtype=complex)
_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _dirac_set() -> np.ndarray:
    g = np.zeros((4, 4, 4), dtype=complex)
    g[0, :2, :2] = _ID2
    g[0, 2:, 2:] = -_ID2
    for k in range(3):
        g[k + 1, :2, 2:] = _PAULI[k]
        g[k + 1, 2:, :2] = -_PAULI[k]
    return g


def _weyl_set() -> np.ndarray:
    g = np.zeros((4, 4, 4), dtype=complex)
    g[0, :2, 2:] = _ID2
    g[0, 2:, :2] = _ID2
    for k in range(3):
        g[k + 1, :2, 2:] = _PAULI[k]
        g[k + 1, 2:, :2] = -_PAULI[k]
    return g


_GAMMA = {"dirac": _dirac_set(), "weyl": _weyl_set()}
REPRESENTATIONS = tuple(_GAMMA)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
IDENTITY = np.eye(4, dtype=complex)


class SingularBasisError(ValueError):
    """The eight wave-function structures degenerate (q -> 0)."""


def gamma(mu: int, rep: str = "dirac") -> np.ndarray:
    """Return gamma^mu in the requested representation."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"Lorentz index must be 0..3, got {mu!r}")
    return _GAMMA[rep][mu].copy()


def slash(v, rep: str = "dirac") -> np.ndarray:
    """Contract a contravariant four-vector with the gamma matrices.

    slash(v) = v^mu g_{mu nu} gamma^nu = v0*gamma0 - vec(v).vec(gamma).
    """
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 4:
        raise ValueError("expected a four-vector with shape (..., 4)")
    if not np.all(np.isfinite(v)):
        raise ValueError("four-vector components must be finite")
    return np.einsum("...m,mij->...ij", v @ METRIC, _GAMMA[rep])


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


@dataclass(frozen=True)
class EnergyProjector:
    """Rest-frame energy projectors of one constituent.

    plus + minus = gamma0 and plus/minus are idempotent and mutually
    orthogonal under the gamma0 product.
    """

    plus: np.ndarray
    minus: np.ndarray
    omega: float
    quark_index: int


def projector(quark_index: int, m: float, q_t, M: float, rep: str = "dirac") -> EnergyProjector:
    """Energy projectors Lambda^+- for constituent 1 (quark) or 2 (antiquark).

    Evaluated in the rest frame with the relative momentum along z:
    q_perp = (0, 0, 0, q_t).  `q_t` may be an array, in which case the
    projector matrices gain matching leading axes.
    """
    if quark_index not in (1, 2):
        raise ValueError("quark_index must be 1 or 2")
    if m <= 0:
        raise ValueError("constituent mass must be positive")
    if M <= 0:
        raise ValueError("bound-state mass must be positive")
    q_t = np.asarray(q_t, dtype=float)
    if np.any(q_t < 0):
        raise ValueError("q_t must be non-negative")
    sign = 1.0 if quark_index == 1 else -1.0
    omega = np.sqrt(m * m + q_t * q_t)
    qv = np.zeros(q_t.shape + (4,))
    qv[..., 3] = q_t
    qslash = slash(qv, rep)
    g0 = _GAMMA[rep][0]
    core = m * IDENTITY + qslash
    om = omega[..., None, None]
    plus = (g0 * om + sign * core) / (2.0 * om)
    minus = (g0 * om - sign * core) / (2.0 * om)
    return EnergyProjector(plus=plus, minus=minus, omega=omega, quark_index=quark_index)


# ---------------------------------------------------------------------------
# Vector (1^-) wave-function basis
#
# The eight structures below span the rest-frame 1^- wave function.  They
# are written with every explicit bound-state-mass factor stripped off
# ("reduced" amplitudes g_i); the mapping to the conventional amplitudes
# f_i is
#
#   g1 = f1, g2 = f2, g3 = f3/M, g4 = f4/M,
#   g5 = M f5, g6 = M f6, g7 = f7, g8 = f8,
#
# which makes both the basis and the constraint relations independent of
# the eigenvalue M.
# ---------------------------------------------------------------------------

_F_TO_G_POWER = np.array([0, 0, -1, -1, 1, 1, 0, 0])  # g_i = M**p * f_i


def wave_basis(k_vec, eps_vec, rep: str = "dirac") -> np.ndarray:
    """Reduced basis matrices B_1..B_8 at spatial momentum ``k_vec``.

    ``k_vec`` has shape (..., 3); ``eps_vec`` is a single spatial
    polarization three-vector.  Returns shape (..., 8, 4, 4).
    """
    k_vec = np.asarray(k_vec, dtype=float)
    eps_vec = np.asarray(eps_vec, dtype=float)
    g = _GAMMA[rep]
    g0 = g[0]
    gs = g[1:]  # spatial gammas

    # four-dot of the purely spatial vectors: q_perp . eps_perp = -(k.eps)
    u = -np.einsum("...i,i->...", k_vec, eps_vec)
    kslash = -np.einsum("...i,ijk->...jk", k_vec, gs)
    eslash = -np.einsum("i,ijk->jk", eps_vec, gs)

    uu = u[..., None, None]
    ident = np.broadcast_to(IDENTITY, kslash.shape)
    basis = np.empty(k_vec.shape[:-1] + (8, 4, 4), dtype=complex)
    basis[..., 0, :, :] = uu * ident
    basis[..., 1, :, :] = uu * g0
    basis[..., 2, :, :] = uu * kslash
    basis[..., 3, :, :] = uu * (g0 @ kslash)
    basis[..., 4, :, :] = np.broadcast_to(eslash, kslash.shape)
    basis[..., 5, :, :] = np.broadcast_to(eslash @ g0, kslash.shape)
    basis[..., 6, :, :] = kslash @ eslash - uu * ident
    basis[..., 7, :, :] = np.einsum("ij,...jk->...ik", g0, eslash @ kslash - uu * ident)
    return basis


def _check_polarization(eps):
    eps = np.asarray(eps, dtype=float)
    if eps.shape == (4,):
        if abs(eps[0]) > 1e-12 * (1.0 + np.abs(eps).max()):
            raise ValueError("polarization must be transverse to P (eps^0 = 0 in the rest frame)")
        eps = eps[1:]
    elif eps.shape != (3,):
        raise ValueError("polarization must be a three- or four-vector")
    if not np.any(eps):
        raise ValueError("polarization vector must be non-zero")
    return eps


def ansatz_matrix(f, q_vec, eps, M: float, rep: str = "dirac") -> np.ndarray:
    """Assemble the 1^- wave-function matrix from eight amplitudes f_1..f_8."""
    f = np.asarray(f, dtype=float)
    if f.shape != (8,):
        raise ValueError("expected eight amplitudes")
    if M <= 0:
        raise ValueError("bound-state mass must be positive")
    eps3 = _check_polarization(eps)
    basis = wave_basis(np.asarray(q_vec, dtype=float), eps3, rep)
    scale = M ** (-_F_TO_G_POWER.astype(float))  # f_i B_i = (M**p f_i) Btilde_i
    return np.einsum("b,bij->ij", f / scale, basis)


def gram_duals(basis: np.ndarray):
    """Dual matrices for coefficient extraction from a (possibly stacked) basis.

    Returns ``(duals, cond)`` where ``coeff_b = Tr[duals_b^dagger X]``.
    The basis is normalized before the Gram solve so that the extraction
    stays well conditioned down to very small momenta.
    """
    norms = np.sqrt(np.abs(np.einsum("...bij,...bij->...b", basis.conj(), basis)))
    if np.any(norms == 0):
        raise SingularBasisError("basis matrices degenerate (q = 0)")
    normed = basis / norms[..., None, None]
    gram = np.einsum("...aij,...bij->...ab", normed.conj(), normed)
    cond = np.linalg.cond(gram)
    if np.any(cond > 1e12):
        raise SingularBasisError("Gram matrix numerically singular (q -> 0)")
    ginv = np.linalg.inv(gram)
    # coeff_b = sum_a Ginv[b,a] Tr[normed_a^dag X] / norms_b
    duals = np.einsum("...ba,...aij->...bij", ginv.conj(), normed) / norms[..., None, None]
    return duals, cond


def trace_project(target: np.ndarray, q_vec, eps, M: float, rep: str = "dirac") -> np.ndarray:
    """Coefficients f_1..f_8 such that ansatz_matrix(f) reproduces ``target``.

    Raises SingularBasisError at q = 0 where the basis degenerates; the
    caller should then use the q -> 0 limit (only the f5/f6 structures
    survive).
    """
    q_vec = np.asarray(q_vec, dtype=float)
    eps3 = _check_polarization(eps)
    basis = wave_basis(q_vec, eps3, rep)
    duals, _ = gram_duals(basis)
    g = np.einsum("bij,ij->b", duals.conj(), np.asarray(target, dtype=complex))
    scale = M ** (-_F_TO_G_POWER.astype(float))
    f = g * scale
    if np.abs(f.imag).max() > 1e-8 * (1.0 + np.abs(f.real).max()):
        raise ValueError("target is not in the span of the 1^- basis (complex coefficients)")
    return f.real


def in_span_residual(target: np.ndarray, basis: np.ndarray) -> float:
    """Relative Frobenius distance of ``target`` from span(basis)."""
    duals, _ = gram_duals(basis)
    coeff = np.einsum("bij,ij->b", duals.conj(), target)
    recon = np.einsum("b,bij->ij", coeff, basis)
    denom = np.linalg.norm(target)
    if denom == 0:
        return 0.0
    return float(np.linalg.norm(target - recon) / denom)
