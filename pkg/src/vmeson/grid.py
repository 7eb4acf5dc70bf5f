"""Radial momentum grid for the discretized Salpeter eigenproblem.

Gauss-Legendre nodes on (0, 1) are pushed through a rational stretching

    q(t) = scale * t / (1 - t * (1 - scale / q_max)),

which maps (0, 1) onto (0, q_max) and concentrates roughly half of the
nodes below ``scale`` GeV, where the wave functions live.  The inverse
map is rational as well, so off-grid points can be pulled back to
t-space where stable barycentric polynomial interpolation applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["MomentumGrid"]


@dataclass(frozen=True)
class MomentumGrid:
    nodes: np.ndarray
    weights: np.ndarray
    q_max: float
    scale: float
    t_nodes: np.ndarray = field(repr=False)
    bary_weights: np.ndarray = field(repr=False)

    @classmethod
    def gauss_stretched(cls, n: int, q_max: float = 40.0, scale: float = 2.0) -> "MomentumGrid":
        if n < 4:
            raise ValueError("grid needs at least 4 nodes")
        if not 0 < scale < q_max:
            raise ValueError("require 0 < scale < q_max")
        x, w = np.polynomial.legendre.leggauss(n)
        t = 0.5 * (x + 1.0)
        wt = 0.5 * w
        c = 1.0 - scale / q_max
        den = 1.0 - t * c
        q = scale * t / den
        dq = scale / den**2
        # barycentric weights for Gauss-Legendre nodes (up to a common factor)
        bary = (-1.0) ** np.arange(n) * np.sqrt((1.0 - x * x) * w)
        return cls(
            nodes=q,
            weights=wt * dq,
            q_max=float(q_max),
            scale=float(scale),
            t_nodes=t,
            bary_weights=bary,
        )

    @property
    def n(self) -> int:
        return len(self.nodes)

    def t_of_q(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        return q / (self.scale + q * (1.0 - self.scale / self.q_max))

    def interpolation_matrix(self, q_points) -> np.ndarray:
        """Barycentric interpolation matrix L with L @ f(nodes) = f(q_points).

        Interpolation is polynomial in the unstretched t variable, where
        the nodes are Gauss-Legendre points.
        """
        t = np.atleast_1d(self.t_of_q(q_points))
        diff = t[:, None] - self.t_nodes[None, :]
        exact = np.isclose(diff, 0.0, atol=1e-15)
        diff = np.where(exact, 1.0, diff)
        terms = self.bary_weights[None, :] / diff
        mat = terms / terms.sum(axis=1, keepdims=True)
        hit = exact.any(axis=1)
        if np.any(hit):
            mat[hit] = 0.0
            mat[hit] = np.where(exact[hit], 1.0, 0.0)
        return mat

    def integrate(self, values) -> float:
        """Plain quadrature of node samples over (0, q_max)."""
        return float(np.dot(self.weights, values))

    def meta(self) -> dict:
        return {"n": self.n, "q_max": self.q_max, "scale": self.scale}
