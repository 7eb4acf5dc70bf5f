"""HTTP service exposing the solver: spectra, decay constants, scans.

All computed energies cross the API boundary in MeV (fields carry a
``_mev`` suffix); model parameters are echoed in their natural GeV-based
units exactly as configured.  Responses carry no timestamps or other
run-varying fields, so identical requests against the same build produce
identical bodies.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, reference
from .channels import CHANNELS, Channel, params_for, resolve_channel
from .observables import decay_constant, uncertainty_scan
from .potential import PotentialParams, QuadratureError
from .solver import (
    NonConvergenceError,
    SolverError,
    SpectrumResult,
    converge,
    solve_channel,
)

__all__ = ["create_app"]

_META = {"package": "vmeson", "version": __version__}


# ---------------------------------------------------------------------------
# request / response models
# ---------------------------------------------------------------------------


class SpectrumRequest(BaseModel):
    channel: str
    n_states: int = Field(default=8, ge=1, le=24)
    grid_n: int = Field(default=128, ge=16, le=512)
    q_max: float = Field(default=40.0, gt=0)
    grid_scale: float = Field(default=2.0, gt=0)
    overrides: dict[str, float] = Field(default_factory=dict)


class DecayRequest(SpectrumRequest):
    scan: bool = False
    scan_fraction: float = Field(default=0.10, ge=0.0, lt=0.5)
    sampler: str = Field(default="corner", pattern="^(corner|grid)$")
    scan_grid_n: int = Field(default=64, ge=16, le=512)
    scan_q_max: float = Field(default=30.0, gt=0)


class ScanRequest(BaseModel):
    channel: str
    fraction: float = Field(default=0.10, ge=0.0, lt=0.5)
    sampler: str = Field(default="corner", pattern="^(corner|grid)$")
    exclude: list[str] = Field(default_factory=list)
    n_states: int = Field(default=1, ge=1, le=24)
    grid_n: int = Field(default=64, ge=16, le=512)
    q_max: float = Field(default=30.0, gt=0)
    overrides: dict[str, float] = Field(default_factory=dict)


class ConvergeRequest(BaseModel):
    channel: str
    n_states: int = Field(default=2, ge=1, le=24)
    tol_mev: float = Field(default=1.0, gt=0)
    overrides: dict[str, float] = Field(default_factory=dict)


class CompareRequest(BaseModel):
    channel: str
    n_states: int = Field(default=2, ge=1, le=8)
    grid_n: int = Field(default=128, ge=16, le=512)
    q_max: float = Field(default=40.0, gt=0)
    overrides: dict[str, float] = Field(default_factory=dict)


class StateOut(BaseModel):
    n: int
    label: str
    mass_mev: float
    f_v_mev: float
    f_v_unc_mev: float | None = None
    diagnostics: dict = Field(default_factory=dict)


class RunResponse(BaseModel):
    meta: dict
    channel: str
    params: dict
    grid: dict
    states: list[StateOut]
    diagnostics: dict = Field(default_factory=dict)


class ScanResponse(RunResponse):
    fraction: float
    sampler: str
    n_samples: int
    n_failed: int
    mass_spread_mev: list[float]


class ConvergeResponse(RunResponse):
    tol_mev: float
    history: list[dict]


class MassRow(BaseModel):
    label: str
    computed_mev: float
    th_mev: float | None = None
    ex_mev: float | None = None
    delta_th_mev: float | None = None
    delta_ex_mev: float | None = None


class DecayRow(BaseModel):
    label: str
    computed_mev: float
    reference_mev: float | None = None
    reference_unc_mev: float | None = None


class CompareResponse(BaseModel):
    meta: dict
    channel: str
    masses: list[MassRow]
    decay_constants: list[DecayRow]


class ChannelOut(BaseModel):
    label: str
    flavor1: str
    flavor2: str
    param_set_id: str
    m1_gev: float
    m2_gev: float


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _channel(name: str) -> Channel:
    try:
        return resolve_channel(name)
    except KeyError as exc:
        raise HTTPException(status_code=400, detail=str(exc.args[0]))


def _params(channel: Channel, overrides: dict) -> PotentialParams:
    base = params_for(channel)
    if not overrides:
        return base
    known = {"a", "alpha", "v0", "lam", "lambda_qcd", "n_flavors"} | set(
        base.quark_masses
    )
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise HTTPException(
            status_code=400,
            detail=f"unknown parameter override(s): {', '.join(unknown)}; "
            f"known: {', '.join(sorted(known))}",
        )
    try:
        return base.with_overrides(**overrides)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _params_dict(params: PotentialParams) -> dict:
    return {
        "a": params.a,
        "alpha": params.alpha,
        "v0": params.v0,
        "lam": params.lam,
        "lambda_qcd": params.lambda_qcd,
        "n_flavors": params.n_flavors,
        "quark_masses": dict(sorted(params.quark_masses.items())),
    }


def _clean(value):
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _states_out(result: SpectrumResult) -> list[StateOut]:
    return [
        StateOut(
            n=st.n,
            label=st.label,
            mass_mev=1000.0 * st.mass,
            f_v_mev=1000.0 * st.f_v,
            f_v_unc_mev=None if st.f_v_unc is None else 1000.0 * st.f_v_unc,
            diagnostics=_clean(st.diagnostics),
        )
        for st in result.states
    ]


def _run_response(result: SpectrumResult, **extra):
    cls = extra.pop("response_class", RunResponse)
    return cls(
        meta=_META,
        channel=result.channel.label,
        params=_params_dict(result.params),
        grid=result.grid_meta,
        states=_states_out(result),
        diagnostics=_clean(result.diagnostics),
        **extra,
    )


# ---------------------------------------------------------------------------
# app factory
# ---------------------------------------------------------------------------


def create_app() -> FastAPI:
    app = FastAPI(title="vmeson", version=__version__)

    @app.exception_handler(NonConvergenceError)
    async def _non_convergence(request, exc):
        return JSONResponse(
            status_code=409,
            content={"detail": {"type": "non_convergence", "message": str(exc)}},
        )

    @app.exception_handler(SolverError)
    async def _solver_error(request, exc):
        return JSONResponse(
            status_code=500,
            content={"detail": {"type": "solver_error", "message": str(exc)}},
        )

    @app.exception_handler(QuadratureError)
    async def _quadrature_error(request, exc):
        return JSONResponse(
            status_code=500,
            content={"detail": {"type": "quadrature_error", "message": str(exc)}},
        )

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "version": __version__,
            "reference_checksum": reference.checksum(),
        }

    @app.get("/channels", response_model=list[ChannelOut])
    def channels():
        out = []
        for label, ch in sorted(CHANNELS.items()):
            m1, m2 = ch.masses(params_for(ch))
            out.append(
                ChannelOut(
                    label=label,
                    flavor1=ch.flavor1,
                    flavor2=ch.flavor2,
                    param_set_id=ch.param_set_id,
                    m1_gev=m1,
                    m2_gev=m2,
                )
            )
        return out

    @app.post("/spectrum", response_model=RunResponse)
    def spectrum(req: SpectrumRequest):
        ch = _channel(req.channel)
        result = solve_channel(
            ch,
            _params(ch, req.overrides),
            n_states=req.n_states,
            grid_n=req.grid_n,
            q_max=req.q_max,
            grid_scale=req.grid_scale,
        )
        return _run_response(result)

    @app.post("/decay", response_model=RunResponse)
    def decay(req: DecayRequest):
        ch = _channel(req.channel)
        params = _params(ch, req.overrides)
        result = solve_channel(
            ch,
            params,
            n_states=req.n_states,
            grid_n=req.grid_n,
            q_max=req.q_max,
            grid_scale=req.grid_scale,
        )
        if req.scan and req.scan_fraction == 0:
            for st in result.states:
                st.f_v_unc = 0.0
        elif req.scan:
            scan = uncertainty_scan(
                ch,
                params,
                fraction=req.scan_fraction,
                sampler=req.sampler,
                n_states=req.n_states,
                grid_n=req.scan_grid_n,
                q_max=req.scan_q_max,
            )
            for st, d in zip(result.states, scan.decay):
                st.f_v_unc = d.uncertainty / 1000.0
        return _run_response(result)

    @app.post("/scan", response_model=ScanResponse)
    def scan(req: ScanRequest):
        ch = _channel(req.channel)
        try:
            result = uncertainty_scan(
                ch,
                _params(ch, req.overrides),
                fraction=req.fraction,
                sampler=req.sampler,
                exclude=tuple(req.exclude),
                n_states=req.n_states,
                grid_n=req.grid_n,
                q_max=req.q_max,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        n_samples = result.decay[0].n_scan_samples if result.decay else 1
        return _run_response(
            result.central,
            response_class=ScanResponse,
            fraction=result.fraction,
            sampler=req.sampler,
            n_samples=n_samples,
            n_failed=result.n_failed,
            mass_spread_mev=result.mass_spread_mev,
        )

    @app.post("/converge", response_model=ConvergeResponse)
    def converge_endpoint(req: ConvergeRequest):
        ch = _channel(req.channel)
        result = converge(
            ch,
            _params(ch, req.overrides),
            n_states=req.n_states,
            tol=req.tol_mev / 1000.0,
        )
        return _run_response(
            result,
            response_class=ConvergeResponse,
            tol_mev=req.tol_mev,
            history=result.diagnostics.get("ladder", []),
        )

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest):
        ch = _channel(req.channel)
        result = solve_channel(
            ch,
            _params(ch, req.overrides),
            n_states=req.n_states,
            grid_n=req.grid_n,
            q_max=req.q_max,
        )
        th = reference.MASSES_TH.get(ch.label, {})
        ex = reference.MASSES_EX.get(ch.label, {})
        fv = reference.DECAY_CONSTANTS.get(ch.label, {})
        masses, decays = [], []
        for st in result.states:
            mass = 1000.0 * st.mass
            t, e = th.get(st.label), ex.get(st.label)
            masses.append(
                MassRow(
                    label=st.label,
                    computed_mev=mass,
                    th_mev=t,
                    ex_mev=e,
                    delta_th_mev=None if t is None else mass - t,
                    delta_ex_mev=None if e is None else mass - e,
                )
            )
            ref = fv.get(st.label)
            decays.append(
                DecayRow(
                    label=st.label,
                    computed_mev=1000.0 * st.f_v,
                    reference_mev=None if ref is None else ref[0],
                    reference_unc_mev=None if ref is None else ref[1],
                )
            )
        return CompareResponse(
            meta=_META, channel=ch.label, masses=masses, decay_constants=decays
        )

    return app
