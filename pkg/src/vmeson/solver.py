"""Discretized full Salpeter eigenproblem for 1^- quark-antiquark states.

The three-dimensional wave function is parametrized by four independent
radial amplitudes; the remaining four are fixed by the vanishing of the
mixed energy projections.  Working with reduced amplitudes

    g1 = f1, g2 = f2, g3 = f3/M, g4 = f4/M,
    g5 = M f5, g6 = M f6, g7 = f7, g8 = f8

removes every explicit mass factor from both the basis matrices and the
constraint relations, so the coupled equations

    (M - w1 - w2) phi^{++} =  Lambda+ eta Lambda+,
    (M + w1 + w2) phi^{--} = -Lambda- eta Lambda-,

combine into a single standard eigenproblem  M x = A x  for the stacked
coefficient vector x = (g3, g4, g5, g6) (x) nodes.  The kernel enters
through precomputed angular-moment product weights; the vector channel is
wrapped with gamma0 ... gamma0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import dirac
from .channels import Channel, params_for
from .grid import MomentumGrid
from .potential import AngularKernel, PotentialParams, build_kernel

__all__ = [
    "derive_constraints",
    "constraint_lift",
    "SalpeterAssembly",
    "assemble",
    "solve_spectrum",
    "VectorWaveFunction",
    "normalize",
    "SolvedState",
    "SpectrumResult",
    "solve_channel",
    "converge",
    "SolverError",
    "NonConvergenceError",
    "UnphysicalStateError",
    "DEFAULT_EPS",
]

log = logging.getLogger(__name__)

# Generic polarization direction: it must be neither parallel nor
# perpendicular to the z-axis momentum, otherwise some of the eight
# structures drop out of the ansatz.  Physical results are independent of
# this choice (tested).
DEFAULT_EPS = np.array([0.6, 0.0, 0.8])

_SQRT3 = np.sqrt(3.0)


class SolverError(RuntimeError):
    pass


class NonConvergenceError(SolverError):
    pass


class UnphysicalStateError(SolverError):
    pass


# ---------------------------------------------------------------------------
# constraint relations
# ---------------------------------------------------------------------------


def _lift_coefficients(q, m1, m2):
    """Coefficients of the constraint relations in reduced amplitudes.

    Written in forms that are regular for all q > 0 and any mass
    splitting, including the equal-mass limit (where g2 = g7 = 0).
    Returns (c1, c2, c7, c8) with

        g1 = c1 * (g5 - q^2 g3),   g2 = -c2 * (q^2 g4 + g6),
        g7 = -c7 * g5,             g8 = -c8 * g6.
    """
    q = np.asarray(q, dtype=float)
    q2 = q * q
    w1 = np.sqrt(m1 * m1 + q2)
    w2 = np.sqrt(m2 * m2 + q2)
    ww = w1 * w2
    c1 = (m1 * m1 + m2 * m2 + q2 + ww + m1 * m2) / ((m1 + m2) * (ww + m1 * m2))
    c2 = (m1 * m1 - m2 * m2) / ((w1 + w2) * (m1 * w2 + m2 * w1))
    c7 = (m1 - m2) / (ww + m1 * m2 + q2)
    c8 = (w1 + w2) / (m1 * w2 + m2 * w1)
    return c1, c2, c7, c8


def constraint_lift(q, m1, m2) -> np.ndarray:
    """Linear map L[b, a, j] from (g3, g4, g5, g6) to all eight g_b."""
    q = np.asarray(q, dtype=float)
    c1, c2, c7, c8 = _lift_coefficients(q, m1, m2)
    L = np.zeros((8, 4) + q.shape)
    L[0, 0] = -q * q * c1
    L[0, 2] = c1
    L[1, 1] = -q * q * c2
    L[1, 3] = -c2
    L[2, 0] = 1.0
    L[3, 1] = 1.0
    L[4, 2] = 1.0
    L[5, 3] = 1.0
    L[6, 2] = -c7
    L[7, 3] = -c8
    return L


def derive_constraints(f3, f4, f5, f6, q_t, m1, m2, omega1, omega2, M):
    """Derived amplitudes (f1, f2, f7, f8) from the four independent ones.

    ``omega1``/``omega2`` are accepted for interface completeness and
    cross-checked against the masses.
    """
    if M <= 0:
        raise ValueError("bound-state mass must be positive")
    q_t = np.asarray(q_t, dtype=float)
    if np.any(q_t <= 0):
        raise ValueError("constraints require q_t > 0")
    w1 = np.sqrt(m1 * m1 + q_t * q_t)
    w2 = np.sqrt(m2 * m2 + q_t * q_t)
    if not (np.allclose(w1, omega1, rtol=1e-10) and np.allclose(w2, omega2, rtol=1e-10)):
        raise ValueError("omega inputs inconsistent with masses and q_t")
    q2 = q_t * q_t
    c1, c2, c7, c8 = _lift_coefficients(q_t, m1, m2)
    g3, g4 = np.asarray(f3) / M, np.asarray(f4) / M
    g5, g6 = M * np.asarray(f5), M * np.asarray(f6)
    f1 = c1 * (g5 - q2 * g3)
    f2 = -c2 * (q2 * g4 + g6)
    f7 = -c7 * g5
    f8 = -c8 * g6
    return f1, f2, f7, f8


# ---------------------------------------------------------------------------
# operator assembly
# ---------------------------------------------------------------------------

_N_AZIMUTH = 8  # exact for the trigonometric degree (<= 2) of the basis
_S_COLLOC = 5  # fit points for the s-polynomial (degree <= 3)


def _azimuthal_coefficients(q_nodes, eps, rep):
    """Matrices C[n, j, b] with  Int dphi B_b(k) = sum_n C[n,j,b] s^n  at |k| = q_j."""
    s_pts, _ = np.polynomial.legendre.leggauss(_S_COLLOC)
    phis = 2.0 * np.pi * np.arange(_N_AZIMUTH) / _N_AZIMUTH
    sin_th = np.sqrt(1.0 - s_pts**2)
    acc = None
    for phi in phis:
        khat = np.stack(
            [sin_th * np.cos(phi), sin_th * np.sin(phi), s_pts], axis=-1
        )  # (S, 3)
        kvec = q_nodes[:, None, None] * khat[None, :, :]  # (N, S, 3)
        contrib = dirac.wave_basis(kvec, eps, rep)  # (N, S, 8, 4, 4)
        acc = contrib if acc is None else acc + contrib
    pavg = acc * (2.0 * np.pi / _N_AZIMUTH)
    # fit s-polynomial coefficients: pavg[j, s] = sum_n C[n, j] s_pts[s]^n
    vand = np.vander(s_pts, 4, increasing=True)  # (S, 4)
    pinv = np.linalg.pinv(vand)  # (4, S)
    coeff = np.einsum("ns,jsbxy->njbxy", pinv, pavg)
    # the basis is at most quadratic in s; treat larger residuals as a bug
    recon = np.einsum("njbxy,sn->jsbxy", coeff, vand)
    err = np.abs(recon - pavg).max()
    if err > 1e-10 * (1.0 + np.abs(pavg).max()):
        raise SolverError("azimuthal average is not polynomial in cos(theta)")
    return coeff


class SalpeterAssembly:
    """Precomputed pieces of the discretized Salpeter operator."""

    def __init__(
        self,
        channel: Channel,
        grid: MomentumGrid,
        kernel: AngularKernel,
        params: PotentialParams,
        rep: str = "dirac",
        eps=DEFAULT_EPS,
    ):
        if kernel.grid is not grid and kernel.grid.meta() != grid.meta():
            raise SolverError("kernel was built on a different grid")
        if kernel.n_moments < 4:
            raise SolverError("kernel must carry moments up to s^3")
        self.channel = channel
        self.grid = grid
        self.kernel = kernel
        self.params = params
        self.rep = rep
        self.eps = np.asarray(eps, dtype=float)
        self.m1, self.m2 = channel.masses(params)

        q = grid.nodes
        self.q = q
        self.w1 = np.sqrt(self.m1**2 + q * q)
        self.w2 = np.sqrt(self.m2**2 + q * q)

        g0 = dirac.gamma(0, rep)
        self._g0 = g0
        p1 = dirac.projector(1, self.m1, q, M=1.0, rep=rep)
        p2 = dirac.projector(2, self.m2, q, M=1.0, rep=rep)
        self.lp1, self.lm1 = p1.plus, p1.minus
        self.lp2, self.lm2 = p2.plus, p2.minus

        zvec = np.zeros((grid.n, 3))
        zvec[:, 2] = q
        self.basis_z = dirac.wave_basis(zvec, self.eps, rep)  # (N, 8, 4, 4)
        self.duals, _ = dirac.gram_duals(self.basis_z)
        self.lift = constraint_lift(q, self.m1, self.m2)  # (8, 4, N)
        self.azim = _azimuthal_coefficients(q, self.eps, rep)  # (4, N, 8, 4, 4)
        self._matrix = None

    # -- matrix ------------------------------------------------------------

    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = self._build_matrix()
        return self._matrix

    def _columns_phi(self):
        """Rest-frame wave matrices of the unit coefficient columns."""
        return np.einsum("baj,jbxy->ajxy", self.lift, self.basis_z)

    def _build_matrix(self) -> np.ndarray:
        g0 = self._g0
        # E[n, a, j]: angular-moment structure of unit column (a, j)
        E = np.einsum("baj,njbxy->najxy", self.lift, self.azim)
        eta = np.einsum("nij,najxy->ajixy", self.kernel.scalar_part, E)
        eta_v = np.einsum("nij,najxy->ajixy", self.kernel.vector_part, E)
        eta += np.einsum("xu,ajiuv,vy->ajixy", g0, eta_v, g0)

        phi = self._columns_phi()  # (4, N, 4, 4)
        idx = np.arange(self.grid.n)
        eta[:, idx, idx] += self.kernel.delta_term[None, :, None, None] * phi

        out = np.einsum("ixu,ajiuv,ivy->ajixy", self.lp1, eta, self.lp2)
        out -= np.einsum("ixu,ajiuv,ivy->ajixy", self.lm1, eta, self.lm2)

        sand = np.einsum("jxu,uv,ajvw,wr,jry->ajxy", self.lp1, g0, phi, g0, self.lp2)
        sand -= np.einsum("jxu,uv,ajvw,wr,jry->ajxy", self.lm1, g0, phi, g0, self.lm2)
        out[:, idx, idx] += (self.w1 + self.w2)[None, :, None, None] * sand

        coeff = np.einsum("ibxy,ajixy->biaj", self.duals.conj(), out)
        coeff = coeff[2:6]  # rows g3..g6
        scale = np.abs(coeff.real).max()
        imag = np.abs(coeff.imag).max()
        if imag > 1e-9 * (1.0 + scale):
            raise SolverError(f"assembled operator has complex entries (max imag {imag:.2e})")
        return coeff.real.reshape(4 * self.grid.n, 4 * self.grid.n)

    # -- application to node samples (for residual oracles) -----------------

    def lift_g(self, g: np.ndarray) -> np.ndarray:
        return np.einsum("baj,aj->bj", self.lift, g)

    def phi_nodes(self, g: np.ndarray) -> np.ndarray:
        """Wave matrices phi(q_j zhat) from stacked amplitudes g (4, N)."""
        return np.einsum("bj,jbxy->jxy", self.lift_g(g), self.basis_z)

    def eta_nodes(self, g: np.ndarray) -> np.ndarray:
        """Kernel convolution eta(q_i zhat) of the wave function."""
        g0 = self._g0
        gb = self.lift_g(g)
        dn = np.einsum("bj,njbxy->njxy", gb, self.azim)
        eta = np.einsum("nij,njxy->ixy", self.kernel.scalar_part, dn)
        eta_v = np.einsum("nij,njxy->ixy", self.kernel.vector_part, dn)
        eta += np.einsum("xu,iuv,vy->ixy", g0, eta_v, g0)
        eta += self.kernel.delta_term[:, None, None] * self.phi_nodes(g)
        return eta

    def projections(self, g: np.ndarray):
        """The four energy projections of phi at every node."""
        g0 = self._g0
        phi = self.phi_nodes(g)
        mid = np.einsum("xu,iuv,vy->ixy", g0, phi, g0)
        pp = self.lp1 @ mid @ self.lp2
        mm = self.lm1 @ mid @ self.lm2
        pm = self.lp1 @ mid @ self.lm2
        mp = self.lm1 @ mid @ self.lp2
        return pp, mm, pm, mp

    def equation_residuals(self, mass: float, g: np.ndarray):
        """Relative residuals of both coupled equations at a solution."""
        eta = self.eta_nodes(g)
        pp, mm, pm, mp = self.projections(g)
        wsum = (self.w1 + self.w2)[:, None, None]
        r1 = (mass - wsum) * pp - self.lp1 @ eta @ self.lp2
        r2 = (mass + wsum) * mm + self.lm1 @ eta @ self.lm2
        norm = np.linalg.norm(self.phi_nodes(g)) * max(mass, 1.0)
        return (
            float(np.linalg.norm(r1) / norm),
            float(np.linalg.norm(r2) / norm),
            float(max(np.linalg.norm(pm), np.linalg.norm(mp)) / np.linalg.norm(self.phi_nodes(g))),
        )


def assemble(channel, grid, kernel, params, rep: str = "dirac", eps=DEFAULT_EPS):
    """Build the eigenproblem matrices (A, B) with A x = M B x.

    The reduced-amplitude parametrization makes the problem exactly linear
    in M with a trivial right-hand side, so B is returned as None
    (identity).
    """
    asm = SalpeterAssembly(channel, grid, kernel, params, rep=rep, eps=eps)
    return asm.matrix(), None


def solve_spectrum(A: np.ndarray, B, n_states: int):
    """Real positive eigenvalues of the discretized system, ascending.

    Returns ``(pairs, info)`` where pairs is a list of (M, coefficient
    vector) and info counts the filtered complex/negative eigenvalues.
    """
    if n_states < 1:
        raise ValueError("n_states must be at least 1")
    if B is None:
        vals, vecs = np.linalg.eig(A)
    else:
        import scipy.linalg

        vals, vecs = scipy.linalg.eig(A, B)
    scale = np.abs(vals).max()
    real = np.abs(vals.imag) <= 1e-8 * scale
    positive = vals.real > 1e-8 * scale
    keep = np.where(real & positive)[0]
    info = {
        "n_complex": int(np.sum(~real)),
        "n_nonpositive": int(np.sum(real & ~positive)),
    }
    if len(keep) < n_states:
        raise SolverError(
            f"only {len(keep)} physical eigenvalues found, {n_states} requested"
        )
    order = keep[np.argsort(vals.real[keep])]
    pairs = []
    for idx in order[: max(n_states * 3, n_states + 8)]:
        vec = vecs[:, idx]
        # rotate the global phase away and keep the real part
        pivot = vec[np.argmax(np.abs(vec))]
        vec = vec * (pivot.conj() / abs(pivot))
        if np.abs(vec.imag).max() > 1e-6:
            info["n_complex"] += 1
            continue
        pairs.append((float(vals.real[idx]), vec.real))
    return pairs, info


# ---------------------------------------------------------------------------
# wave functions and spectrum results
# ---------------------------------------------------------------------------


@dataclass
class VectorWaveFunction:
    """Radial amplitudes of one bound state on the grid.

    f3..f6 are the independent amplitudes, f1/f2/f7/f8 the constrained
    ones; g3..g6 are the reduced (mass-rescaled) amplitudes actually
    solved for.
    """

    grid: MomentumGrid
    mass: float
    g: np.ndarray  # (4, N): g3, g4, g5, g6
    m1: float
    m2: float
    radial_index: int = 0
    normalized: bool = False

    @property
    def f3(self):
        return self.mass * self.g[0]

    @property
    def f4(self):
        return self.mass * self.g[1]

    @property
    def f5(self):
        return self.g[2] / self.mass

    @property
    def f6(self):
        return self.g[3] / self.mass

    def derived(self):
        L = constraint_lift(self.grid.nodes, self.m1, self.m2)
        gb = np.einsum("baj,aj->bj", L, self.g)
        return gb[0], gb[1], gb[6], gb[7]  # f1, f2, f7, f8 (= g1, g2, g7, g8)

    def norm_integral(self) -> float:
        """Left side of the 3D normalization condition (should equal 2M)."""
        q = self.grid.nodes
        q2 = q * q
        w1 = np.sqrt(self.m1**2 + q2)
        w2 = np.sqrt(self.m2**2 + q2)
        g3, g4, g5, g6 = self.g
        bracket = 3.0 * g5 * g6 / (self.m1 * w2 + self.m2 * w1)
        bracket += (
            (w1 * w2 - self.m1 * self.m2 + q2)
            / ((self.m1 + self.m2) * (w1 + w2))
            * (g4 * g5 - g3 * (g4 * q2 + g6))
        )
        # Overall sign fixed against the projector trace form of the norm,
        # Tr[phibar^{++} g0 phi^{++} g0 - phibar^{--} g0 phi^{--} g0], which
        # is positive for positive-energy-dominated solutions (tested).
        integrand = -q2 / (2.0 * np.pi**2) * (16.0 * w1 * w2 / 3.0) * bracket
        return self.grid.integrate(integrand)

    def f5_integral(self) -> float:
        """Int d3q/(2pi)^3 f5, the quantity entering the decay constant."""
        q = self.grid.nodes
        return self.grid.integrate(q * q * self.g[2]) / (2.0 * np.pi**2 * self.mass)


def normalize(wf: VectorWaveFunction, channel: Channel = None) -> VectorWaveFunction:
    """Rescale so the normalization integral equals 2M; fix the f5 sign.

    Raises UnphysicalStateError for non-positive norm (negative-energy
    tower states), which callers exclude from results.
    """
    integral = wf.norm_integral()
    if integral <= 0:
        raise UnphysicalStateError(
            f"non-positive normalization integral ({integral:.3e}) at M = {wf.mass:.4f}"
        )
    scale = np.sqrt(2.0 * wf.mass / integral)
    g = wf.g * scale
    if np.dot(wf.grid.weights, wf.grid.nodes**2 * g[2]) < 0:
        g = -g
    return VectorWaveFunction(
        grid=wf.grid,
        mass=wf.mass,
        g=g,
        m1=wf.m1,
        m2=wf.m2,
        radial_index=wf.radial_index,
        normalized=True,
    )


def count_nodes(values: np.ndarray, floor: float = 1e-3) -> int:
    """Sign changes of a radial amplitude, ignoring numerical dust."""
    v = np.asarray(values)
    big = np.abs(v) > floor * np.abs(v).max()
    signs = np.sign(v[big])
    return int(np.sum(signs[1:] != signs[:-1]))


def _wave_class(wf: VectorWaveFunction) -> str:
    """S- vs D-dominance from the relative weight of the amplitudes."""
    q = wf.grid.nodes
    w = wf.grid.weights * q * q
    g3, g4, g5, g6 = wf.g
    s_weight = np.dot(w, g5 * g5 + g6 * g6)
    d_weight = np.dot(w, (q * q * g3) ** 2 + (q * q * g4) ** 2)
    return "S" if s_weight >= d_weight else "D"


@dataclass
class SolvedState:
    n: int
    label: str
    mass: float  # GeV
    wf: VectorWaveFunction
    f_v: float  # GeV
    f_v_unc: float | None = None
    diagnostics: dict = field(default_factory=dict)


@dataclass
class SpectrumResult:
    channel: Channel
    params: PotentialParams
    grid_meta: dict
    states: list
    diagnostics: dict = field(default_factory=dict)

    def masses_mev(self):
        return [1000.0 * s.mass for s in self.states]


def _decay_constant_gev(wf: VectorWaveFunction) -> float:
    return 4.0 * _SQRT3 * wf.f5_integral()


def solve_channel(
    channel: Channel,
    params: PotentialParams = None,
    n_states: int = 8,
    grid_n: int = 128,
    q_max: float = 40.0,
    grid_scale: float = 2.0,
    rep: str = "dirac",
    eps=DEFAULT_EPS,
    with_residuals: bool = True,
) -> SpectrumResult:
    """Solve one channel end to end and return the ordered state tower."""
    if params is None:
        params = params_for(channel)
    grid = MomentumGrid.gauss_stretched(grid_n, q_max=q_max, scale=grid_scale)
    kernel = build_kernel(grid, params)
    asm = SalpeterAssembly(channel, grid, kernel, params, rep=rep, eps=eps)
    A = asm.matrix()
    pairs, info = solve_spectrum(A, None, n_states)

    states = []
    n_negative_norm = 0
    for mass, vec in pairs:
        if len(states) >= n_states:
            break
        g = vec.reshape(4, grid.n)
        wf = VectorWaveFunction(grid=grid, mass=mass, g=g, m1=asm.m1, m2=asm.m2)
        try:
            wf = normalize(wf)
        except UnphysicalStateError:
            n_negative_norm += 1
            continue
        diag = {}
        if with_residuals:
            r1, r2, rmix = asm.equation_residuals(mass, wf.g)
            eig_res = float(
                np.linalg.norm(A @ wf.g.ravel() - mass * wf.g.ravel())
                / np.linalg.norm(wf.g)
            )
            diag.update(
                eq_residual_pp=r1,
                eq_residual_mm=r2,
                mixed_projection=rmix,
                eig_residual=eig_res,
            )
        diag["norm_integral"] = wf.norm_integral()
        diag["f5_nodes"] = count_nodes(wf.g[2])
        states.append(
            SolvedState(
                n=len(states) + 1,
                label="",
                mass=mass,
                wf=wf,
                f_v=_decay_constant_gev(wf),
                diagnostics=diag,
            )
        )

    if len(states) < n_states:
        raise SolverError(
            f"channel {channel.label}: only {len(states)} positive-norm states found"
        )

    # label the tower: nth state of its S/D class by mass ordering
    counters = {"S": 0, "D": 0}
    for st in states:
        cls = _wave_class(st.wf)
        counters[cls] += 1
        st.label = f"{counters[cls]}{cls}"
        st.wf.radial_index = counters[cls]

    below_threshold = states[0].mass < asm.m1 + asm.m2
    diagnostics = dict(info)
    diagnostics.update(
        n_negative_norm=n_negative_norm,
        ground_state_below_threshold=bool(below_threshold),
    )
    if not below_threshold:
        log.warning(
            "channel %s: ground state above the free threshold", channel.label
        )
    return SpectrumResult(
        channel=channel,
        params=params,
        grid_meta=grid.meta(),
        states=states,
        diagnostics=diagnostics,
    )


_DEFAULT_LADDER = ((64, 30.0), (96, 36.0), (128, 40.0), (160, 46.0), (192, 52.0))


def converge(
    channel: Channel,
    params: PotentialParams = None,
    n_states: int = 2,
    tol: float = 0.001,
    ladder=_DEFAULT_LADDER,
    **kwargs,
) -> SpectrumResult:
    """Refine (N, q_max) until the requested masses move less than ``tol`` GeV."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    previous = None
    history = []
    for grid_n, q_max in ladder:
        result = solve_channel(
            channel, params, n_states=n_states, grid_n=grid_n, q_max=q_max, **kwargs
        )
        masses = np.array(result.masses_mev()[:n_states])
        step = {"grid_n": grid_n, "q_max": q_max, "masses_mev": masses.tolist()}
        if previous is not None:
            drift = float(np.abs(masses - previous).max())
            step["drift_mev"] = drift
            history.append(step)
            if drift < 1000.0 * tol:
                result.diagnostics["ladder"] = history
                result.diagnostics["converged"] = True
                return result
        else:
            history.append(step)
        previous = masses
    raise NonConvergenceError(
        f"channel {channel.label}: masses still moving after ladder {list(ladder)}"
    )
