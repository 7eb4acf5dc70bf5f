"""Momentum-space Cornell interaction and its angular reduction.

The kernel has a regularized linear (scalar) part and a one-gluon-exchange
(vector) part with a running coupling,

    V_s(r) = -(lam/alpha + v0) * delta3(r) + lam/pi^2 / (r^2 + alpha^2)^2,
    V_v(r) = -(2 / 3 pi^2) * alpha_s(r) / (r^2 + alpha^2),

with r the exchanged three-momentum.  The delta term is normalized so
that its convolution contributes exactly -(lam/alpha + v0) * phi(q); with
that convention the alpha-divergent pieces of the delta term and the
smooth 1/(r^2+alpha^2)^2 term cancel and the scalar channel reduces to a
linear-plus-constant potential in position space.

Angular integration over the direction of the loop momentum produces
moment integrals

    I_n(q, k) = Integral_{-1}^{1} ds s^n V(sqrt(q^2 + k^2 - 2 q k s))

evaluated by Gauss-Legendre panels graded geometrically away from the
integrand peak at s = 1 (width set by the regulator alpha).  The radial
convolution is discretized with product-integration (Nystrom) weights so
that the near-diagonal peak of the scalar kernel is integrated exactly
against a polynomial interpolant of the smooth wave function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .grid import MomentumGrid

__all__ = [
    "PotentialParams",
    "AngularKernel",
    "alpha_s",
    "potential_values",
    "angular_moments",
    "angular_integrate",
    "build_kernel",
    "QuadratureError",
]

ALPHA_S_FROZEN = 12.0 * math.pi / 27.0  # three active flavors, a = e


class QuadratureError(RuntimeError):
    """Angular quadrature failed its internal refinement check."""


@dataclass(frozen=True)
class PotentialParams:
    """Kernel constants plus constituent quark masses (all GeV-based)."""

    a: float = math.e
    alpha: float = 0.06
    v0: float = -0.49
    lam: float = 0.21
    lambda_qcd: float = 0.27
    n_flavors: int = 3
    quark_masses: dict = field(
        default_factory=lambda: {
            "b": 5.158,
            "c": 1.7551,
            "s": 0.535,
            "d": 0.377,
            "u": 0.371,
        }
    )

    def __post_init__(self):
        if self.a <= 1.0:
            raise ValueError("a must exceed 1 so that log(a + x) stays positive")
        if self.alpha <= 0 or self.lam <= 0 or self.lambda_qcd <= 0:
            raise ValueError("alpha, lam and lambda_qcd must be positive")
        if not 0 < self.n_flavors < 17:
            raise ValueError("n_flavors must keep the beta function asymptotically free")
        for flavor, m in self.quark_masses.items():
            if m <= 0:
                raise ValueError(f"non-positive quark mass for flavor {flavor!r}")

    @property
    def delta_coefficient(self) -> float:
        return -(self.lam / self.alpha + self.v0)

    def with_overrides(self, **kwargs) -> "PotentialParams":
        masses = dict(self.quark_masses)
        for key in list(kwargs):
            if key in masses:
                masses[key] = kwargs.pop(key)
        if masses != self.quark_masses:
            kwargs["quark_masses"] = masses
        return replace(self, **kwargs)


# ---------------------------------------------------------------------------
# pointwise kernel values
# ---------------------------------------------------------------------------


def alpha_s(q, params: PotentialParams):
    """Running coupling 12 pi / (33 - 2 n_f) / log(a + q^2 / Lambda^2).

    Frozen at 12 pi / 27 as q -> 0 for the default a = e, n_f = 3.
    """
    q = np.asarray(q, dtype=float)
    prefactor = 12.0 * math.pi / (33.0 - 2.0 * params.n_flavors)
    return prefactor / np.log(params.a + q * q / params.lambda_qcd**2)


def potential_values(r, params: PotentialParams):
    """Smooth parts (V_s, V_v) at exchanged momentum r; no delta term."""
    r = np.asarray(r, dtype=float)
    reg = r * r + params.alpha**2
    v_s = params.lam / math.pi**2 / reg**2
    v_v = -2.0 / (3.0 * math.pi**2) * alpha_s(r, params) / reg
    return v_s, v_v


# ---------------------------------------------------------------------------
# angular moments
# ---------------------------------------------------------------------------

_GL_CACHE: dict = {}


def _gauss(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _panel_edges(r_lo, r_hi, alpha, n_panel):
    """Geometrically graded breakpoints from r_lo towards r_hi (arrays ok)."""
    steps = alpha * (2.0 ** np.arange(n_panel) - 1.0)
    edges = np.minimum(r_lo[..., None] + steps, r_hi[..., None])
    edges[..., -1] = r_hi
    return edges


def angular_moments(q, k, params: PotentialParams, n_max: int = 3, n_gauss: int = 16):
    """Moment integrals of both kernel channels over s = cos(theta).

    Returns ``(s_mom, v_mom)`` with shape ``(n_max + 1,) + broadcast(q, k)``.
    The integration runs in the exchanged-momentum variable
    r = sqrt(q^2 + k^2 - 2 q k s) on panels whose width doubles away from
    the peak at r = |q - k|, resolving the regulator scale alpha.
    """
    q, k = np.broadcast_arrays(np.asarray(q, float), np.asarray(k, float))
    if np.any(q <= 0) or np.any(k <= 0):
        raise ValueError("angular moments require q, k > 0")
    r_lo = np.abs(q - k)
    r_hi = q + k
    span = float(np.max(r_hi - r_lo))
    n_panel = max(8, int(math.ceil(math.log2(span / params.alpha + 2.0))) + 2)
    edges = _panel_edges(r_lo, r_hi, params.alpha, n_panel)
    lo = np.concatenate([r_lo[..., None], edges[..., :-1]], axis=-1)
    hi = edges
    x, w = _gauss(n_gauss)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    r = mid[..., None] + half[..., None] * x  # (..., panel, gauss)
    wr = half[..., None] * w

    v_s, v_v = potential_values(r, params)
    qk = (q * k)[..., None, None]
    s = (q[..., None, None] ** 2 + k[..., None, None] ** 2 - r * r) / (2.0 * qk)
    base = r / qk * wr
    out_s = np.empty((n_max + 1,) + q.shape)
    out_v = np.empty((n_max + 1,) + q.shape)
    sn = np.ones_like(r)
    for n in range(n_max + 1):
        out_s[n] = np.sum(base * sn * v_s, axis=(-2, -1))
        out_v[n] = np.sum(base * sn * v_v, axis=(-2, -1))
        sn = sn * s
    return out_s, out_v


def angular_integrate(q: float, k: float, moment: int, params: PotentialParams, rtol: float = 1e-9):
    """Single (q, k) moment of both channels, with a refinement check.

    Raises QuadratureError if doubling the Gauss order moves the result by
    more than ``rtol`` relative.
    """
    coarse = angular_moments(q, k, params, n_max=moment, n_gauss=16)
    fine = angular_moments(q, k, params, n_max=moment, n_gauss=24)
    for c, f in zip(coarse, fine):
        scale = abs(f[moment]) + 1e-300
        if abs(f[moment] - c[moment]) > rtol * scale + 1e-14:
            raise QuadratureError(
                f"angular quadrature did not converge at q={q}, k={k}, moment={moment}"
            )
    return fine[0][moment], fine[1][moment]


# ---------------------------------------------------------------------------
# kernel assembly: product-integration weights on the radial grid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngularKernel:
    """Radial product-integration weights of the angular kernel moments.

    ``scalar_part[n, i, j]`` approximates
    Integral dk k^2 I^s_n(q_i, k) f(k) ~= sum_j scalar_part[n, i, j] f(k_j)
    for smooth f, and likewise ``vector_part`` for the one-gluon-exchange
    channel (to be wrapped with gamma0 ... gamma0 by the assembler).
    ``delta_term`` is the per-node diagonal -(lam/alpha + v0).
    """

    scalar_part: np.ndarray
    vector_part: np.ndarray
    delta_term: np.ndarray
    grid: MomentumGrid
    params: PotentialParams
    n_moments: int

    def __post_init__(self):
        if not (np.all(np.isfinite(self.scalar_part)) and np.all(np.isfinite(self.vector_part))):
            raise QuadratureError("kernel contains non-finite entries")


def _dense_points(q_i: float, q_max: float, alpha: float):
    """Graded dense quadrature nodes on (0, q_max), clustered around q_i."""
    # breakpoints doubling away from q_i in both directions
    steps = alpha * (2.0 ** np.arange(24) - 1.0)
    right = np.clip(q_i + steps, None, q_max)
    left = np.clip(q_i - steps, 0.0, None)
    edges = np.unique(np.concatenate([[0.0, q_max], left, right]))
    x, w = _gauss(8)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x).ravel()
    wts = (half[:, None] * w).ravel()
    keep = wts > 0
    return pts[keep], wts[keep]


def build_kernel(grid: MomentumGrid, params: PotentialParams, n_moments: int = 4) -> AngularKernel:
    """Precompute radial product weights for all node pairs and moments."""
    n = grid.n
    scalar = np.empty((n_moments, n, n))
    vector = np.empty((n_moments, n, n))
    for i, q_i in enumerate(grid.nodes):
        pts, wts = _dense_points(q_i, grid.q_max, params.alpha)
        s_mom, v_mom = angular_moments(q_i, pts, params, n_max=n_moments - 1)
        interp = grid.interpolation_matrix(pts)
        weighted = wts * pts * pts
        scalar[:, i, :] = (s_mom * weighted) @ interp
        vector[:, i, :] = (v_mom * weighted) @ interp
    delta = np.full(n, params.delta_coefficient)
    return AngularKernel(
        scalar_part=scalar,
        vector_part=vector,
        delta_term=delta,
        grid=grid,
        params=params,
        n_moments=n_moments,
    )
