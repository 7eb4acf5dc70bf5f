"""Leptonic decay constants, ratios, and parameter-variation uncertainties.

The vector decay constant is the vacuum-to-meson matrix element of the
vector current, F_V M eps_mu = <0| qbar gamma_mu q |V, eps>, which for
the 1^- wave function reduces to an integral over the single amplitude
f5:

    F_V = 4 sqrt(N_c) Int d3q/(2pi)^3 f5(q),   N_c = 3.

Uncertainties follow the "vary all inputs simultaneously by +-10% and
take the largest deviation" prescription, implemented as the full set of
sign corners of the parameter hypercube (plus the center).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, params_for
from .potential import PotentialParams
from .solver import (
    SolverError,
    SpectrumResult,
    VectorWaveFunction,
    solve_channel,
)

__all__ = [
    "decay_constant",
    "decay_ratio",
    "uncertainty_scan",
    "DecayConstantResult",
    "ScanResult",
    "SCAN_PARAMETERS",
]

log = logging.getLogger(__name__)

_SQRT_NC = np.sqrt(3.0)

# Potential constants varied by the scan; quark masses are added per
# channel (one per distinct flavor).
SCAN_PARAMETERS = ("a", "alpha", "v0", "lam", "lambda_qcd")


def decay_constant(wf: VectorWaveFunction) -> float:
    """F_V in MeV from a normalized wave function."""
    if not wf.normalized:
        raise ValueError("decay_constant requires a normalized wave function")
    f_v = 4.0 * _SQRT_NC * wf.f5_integral()
    return 1000.0 * f_v


@dataclass
class DecayConstantResult:
    central: float  # MeV
    uncertainty: float  # MeV
    state_label: str
    channel: str
    n_scan_samples: int = 0

    def __post_init__(self):
        if self.central <= 0:
            raise ValueError("decay constant must be positive")
        if self.uncertainty < 0:
            raise ValueError("uncertainty must be non-negative")


def decay_ratio(numerator, denominator, correlated_samples=None):
    """Ratio of two decay constants with propagated uncertainty.

    ``numerator`` and ``denominator`` are DecayConstantResult (or objects
    with .central/.uncertainty in MeV).  When ``correlated_samples`` is
    given as a sequence of (num_sample, den_sample) pairs from a joint
    parameter scan, the ratio uncertainty is the largest deviation of the
    sampled ratios from the central ratio; otherwise uncertainties are
    combined in quadrature.
    """
    num_c, num_u = _central_unc(numerator)
    den_c, den_u = _central_unc(denominator)
    if den_c == 0:
        raise ZeroDivisionError("denominator decay constant is zero")
    if num_c <= 0 or den_c < 0:
        raise ValueError("decay constants must be positive")
    ratio = num_c / den_c
    if correlated_samples is not None:
        devs = [
            abs(a / b - ratio) for a, b in correlated_samples if b != 0
        ]
        unc = max(devs) if devs else 0.0
    else:
        unc = ratio * np.hypot(num_u / num_c, den_u / den_c)
    return ratio, float(unc)


def _central_unc(value):
    if hasattr(value, "central"):
        return float(value.central), float(value.uncertainty)
    central, unc = value
    return float(central), float(unc)


@dataclass
class ScanResult:
    """Central values plus scan spreads for one channel."""

    channel: str
    fraction: float
    central: SpectrumResult
    decay: list  # DecayConstantResult per state
    mass_spread_mev: list  # max |M_sample - M_center| per state
    samples_f_v: list = field(default_factory=list)  # per state: list of MeV values
    n_failed: int = 0


def _scan_param_names(channel: Channel, exclude=()):
    names = list(SCAN_PARAMETERS)
    names.append(channel.flavor1)
    if not channel.equal_flavors:
        names.append(channel.flavor2)
    return [n for n in names if n not in exclude]


def _corner_samples(names, fraction):
    for signs in itertools.product((-1.0, 1.0), repeat=len(names)):
        yield {n: 1.0 + s * fraction for n, s in zip(names, signs)}


def _grid_samples(names, fraction):
    for levels in itertools.product((-1.0, 0.0, 1.0), repeat=len(names)):
        if all(l == 0.0 for l in levels):
            continue
        yield {n: 1.0 + l * fraction for n, l in zip(names, levels)}


def _apply_factors(params: PotentialParams, factors: dict) -> PotentialParams:
    overrides = {}
    for name, fac in factors.items():
        if name in params.quark_masses:
            overrides[name] = params.quark_masses[name] * fac
        else:
            overrides[name] = getattr(params, name) * fac
    return params.with_overrides(**overrides)


def uncertainty_scan(
    channel: Channel,
    params: PotentialParams = None,
    fraction: float = 0.10,
    sampler: str = "corner",
    exclude=(),
    n_states: int = 1,
    grid_n: int = 64,
    q_max: float = 30.0,
    **solve_kwargs,
) -> ScanResult:
    """Re-solve at parameter corners and report the largest F_V deviation.

    All potential constants and the channel's quark masses move
    simultaneously by ``+-fraction`` of their (signed) central values;
    every sign combination is sampled (``sampler="grid"`` adds the
    one-at-a-time and partial combinations with levels -1/0/+1).
    """
    if not 0.0 <= fraction < 0.5:
        raise ValueError("fraction must lie in [0, 0.5)")
    if sampler not in ("corner", "grid"):
        raise ValueError("sampler must be 'corner' or 'grid'")
    if params is None:
        params = params_for(channel)

    central = solve_channel(
        channel,
        params,
        n_states=n_states,
        grid_n=grid_n,
        q_max=q_max,
        with_residuals=False,
        **solve_kwargs,
    )
    central_f = [decay_constant(s.wf) for s in central.states]
    central_m = np.array([1000.0 * s.mass for s in central.states])

    if fraction == 0.0:
        decay = [
            DecayConstantResult(f, 0.0, st.label, channel.label, 1)
            for f, st in zip(central_f, central.states)
        ]
        return ScanResult(
            channel=channel.label,
            fraction=0.0,
            central=central,
            decay=decay,
            mass_spread_mev=[0.0] * n_states,
            samples_f_v=[[f] for f in central_f],
        )

    names = _scan_param_names(channel, exclude)
    if not names:
        raise ValueError("all scan parameters excluded")
    sample_gen = _corner_samples if sampler == "corner" else _grid_samples
    f_samples = [[] for _ in range(n_states)]
    m_spread = np.zeros(n_states)
    n_failed = 0
    n_samples = 0
    for factors in sample_gen(names, fraction):
        n_samples += 1
        try:
            res = solve_channel(
                channel,
                _apply_factors(params, factors),
                n_states=n_states,
                grid_n=grid_n,
                q_max=q_max,
                with_residuals=False,
                **solve_kwargs,
            )
        except SolverError:
            log.warning(
                "scan sample dropped for %s (factors %s)", channel.label, factors
            )
            n_failed += 1
            continue
        for k, st in enumerate(res.states[:n_states]):
            f_samples[k].append(decay_constant(st.wf))
            m_spread[k] = max(m_spread[k], abs(1000.0 * st.mass - central_m[k]))

    decay = []
    for k, st in enumerate(central.states):
        devs = [abs(f - central_f[k]) for f in f_samples[k]]
        unc = max(devs) if devs else 0.0
        decay.append(
            DecayConstantResult(
                central=central_f[k],
                uncertainty=unc,
                state_label=st.label,
                channel=channel.label,
                n_scan_samples=n_samples - n_failed + 1,
            )
        )
        st.f_v_unc = unc / 1000.0
    return ScanResult(
        channel=channel.label,
        fraction=fraction,
        central=central,
        decay=decay,
        mass_spread_mev=m_spread.tolist(),
        samples_f_v=f_samples,
        n_failed=n_failed,
    )
