"""FastAPI service wrapping the computation package.

Every command is a POST endpoint taking a pydantic request model and
returning the shared table envelope

    {"config": {...}, "rows": [...], "validation": {...} | null}

which is also, verbatim, the JSON file format the CLI emits.  The CLI is a
thin client of the same handler functions (in process by default, over
HTTP with --server).

Endpoints:
    POST /v1/spectrum        bound-state tables (dirac and spinless towers)
    POST /v1/cross-section   interference cross section over an angle grid
    POST /v1/phase-shifts    per-channel phase shifts and S-matrix elements
    POST /v1/wavefunction    radial (f, g) samples, bound or continuum
    POST /v1/validate        cross-validation suite report
    GET  /health
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field, model_validator

from . import radial, scattering, validation
from .config import active_profile
from .errors import (
    AbcoulombError,
    ConfigError,
    DomainError,
    ForwardSingularity,
    InadmissibleQuantumNumber,
    SupercriticalError,
    ZeroCouplingError,
)
from .spectrum import Coupling, dirac_energy, kg_energy, make_channel

__all__ = [
    "CouplingParams",
    "GridSpec",
    "SpectrumRequest",
    "CrossSectionRequest",
    "PhaseShiftsRequest",
    "WavefunctionRequest",
    "ValidateRequest",
    "TableResponse",
    "spectrum_handler",
    "cross_section_handler",
    "phase_shifts_handler",
    "wavefunction_handler",
    "validate_handler",
    "create_app",
]


class CouplingParams(BaseModel):
    a: float = Field(ge=0.0, description="Coulomb strength (hbar = c = 1)")
    flux: float = Field(default=0.0, description="flux parameter eB")
    mass: float = Field(default=1.0, gt=0.0)
    eta: Literal[1, -1] = 1

    def to_coupling(self) -> Coupling:
        return Coupling(a=self.a, eB=self.flux, m=self.mass, eta=self.eta)


class GridSpec(BaseModel):
    """Uniform (phi) or logarithmic (r) grid: start, stop, count."""

    start: float
    stop: float
    count: int = Field(ge=2, le=2_000_000)
    spacing: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def _ordered(self):
        if not self.stop > self.start:
            raise ValueError("grid requires stop > start")
        if self.spacing == "log" and self.start <= 0.0:
            raise ValueError("log grid requires start > 0")
        return self

    def build(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


class _EnergyMomentum(BaseModel):
    """Mutually exclusive energy/momentum specification (units of mass)."""

    energy: float | None = None
    momentum: float | None = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.energy is None) == (self.momentum is None):
            raise ValueError("exactly one of energy or momentum is required")
        return self

    def resolve(self, m: float) -> tuple[float, float]:
        """Return (E, p) with E > m enforced."""
        if self.energy is not None:
            e = self.energy
            if e <= m:
                raise DomainError(f"energy must exceed m = {m}, got {e}")
            return e, math.sqrt(e * e - m * m)
        p = self.momentum
        if p is None or p <= 0.0:
            raise DomainError(f"momentum must be positive, got {p}")
        return math.sqrt(p * p + m * m), p


class SpectrumRequest(BaseModel):
    coupling: CouplingParams
    l_min: int = 0
    l_max: int = 0
    n_max: int = Field(default=0, ge=0)
    models: list[Literal["dirac", "kg"]] = ["dirac"]

    @model_validator(mode="after")
    def _range(self):
        if self.l_max < self.l_min:
            raise ValueError("l_max must be >= l_min")
        if not self.models:
            raise ValueError("at least one model required")
        return self


class CrossSectionRequest(BaseModel):
    coupling: CouplingParams
    kinematics: _EnergyMomentum
    phi_grid: GridSpec


class PhaseShiftsRequest(BaseModel):
    coupling: CouplingParams
    kinematics: _EnergyMomentum
    l_max: int = Field(default=60, ge=0)


class WavefunctionRequest(BaseModel):
    coupling: CouplingParams
    l: int = 0
    n: int | None = None
    energy: float | None = None
    r_grid: GridSpec | None = None

    @model_validator(mode="after")
    def _one_state(self):
        if (self.n is None) == (self.energy is None):
            raise ValueError("exactly one of n (bound) or energy (continuum) required")
        return self


class ValidateRequest(BaseModel):
    checks: list[str] | None = None
    tolerance_profile: Literal["default", "strict"] | None = None
    tolerance_overrides: dict[str, float] = {}

    @model_validator(mode="after")
    def _known(self):
        if self.checks is not None:
            if not self.checks:
                raise ValueError("empty check selection")
            unknown = [c for c in self.checks if c not in validation.SUITE_NAMES]
            if unknown:
                raise ValueError(f"unknown checks {unknown}; "
                                 f"available: {list(validation.SUITE_NAMES)}")
        return self


class TableResponse(BaseModel):
    config: dict
    rows: list[dict]
    validation: dict | None = None


def spectrum_handler(req: SpectrumRequest) -> TableResponse:
    c = req.coupling.to_coupling()
    rows: list[dict] = []
    zero = c.a == 0.0
    any_subcritical = False
    for model in sorted(set(req.models)):
        for l in range(req.l_min, req.l_max + 1):
            ch = make_channel(c, l)
            if zero:
                continue
            if model == "dirac":
                if not ch.subcritical or ch.kappa == 0.0:
                    rows.append(_spectrum_row(model, l, ch.kappa, None, None,
                                              None, "supercritical"))
                    continue
                any_subcritical = True
                n_start = 0 if ch.kappa > 0 else 1
                for n in range(n_start, req.n_max + 1):
                    st = dirac_energy(c, l, n)
                    rows.append(_spectrum_row(model, l, ch.kappa, n,
                                              st.gamma_exp, st.energy / c.m,
                                              "subcritical"))
            else:
                w = l + c.eB
                if w * w <= c.a * c.a:
                    rows.append(_spectrum_row(model, l, ch.kappa, None, None,
                                              None, "supercritical"))
                    continue
                any_subcritical = True
                gamma_s = math.sqrt(w * w - c.a * c.a)
                for n in range(1, req.n_max + 1):
                    e = kg_energy(c, l, n)
                    rows.append(_spectrum_row(model, l, ch.kappa, n, gamma_s,
                                              e / c.m, "subcritical"))
    if not zero and not any_subcritical:
        raise SupercriticalError("all requested channels are supercritical")
    config = _config_dict(req.coupling, command="spectrum",
                          l_min=req.l_min, l_max=req.l_max, n_max=req.n_max,
                          models=sorted(set(req.models)), zero_coupling=zero)
    return TableResponse(config=config, rows=rows)


def _spectrum_row(model, l, kappa, n, gamma, e_over_m, regime):
    return {
        "model": model,
        "l": l,
        "n": n,
        "kappa": kappa,
        "gamma": gamma,
        "e_over_m": e_over_m,
        "lambda_over_m": (math.sqrt(max(1.0 - e_over_m ** 2, 0.0))
                          if e_over_m is not None else None),
        "regime": regime,
    }


def cross_section_handler(req: CrossSectionRequest) -> TableResponse:
    c = req.coupling.to_coupling()
    energy, p = req.kinematics.resolve(c.m)
    tol = active_profile()
    rows = []
    for phi in req.phi_grid.build():
        sample = scattering.total_amplitude(float(phi), c, p, tol=tol)
        rows.append({
            "phi": sample.phi,
            "re_f_ab": sample.f_ab.real,
            "im_f_ab": sample.f_ab.imag,
            "re_f_a": sample.f_a.real,
            "im_f_a": sample.f_a.imag,
            "dsigma": sample.dsigma,
        })
    config = _config_dict(req.coupling, command="cross_section",
                          energy=energy, momentum=p,
                          phi_grid=req.phi_grid.model_dump())
    return TableResponse(config=config, rows=rows)


def phase_shifts_handler(req: PhaseShiftsRequest) -> TableResponse:
    c = req.coupling.to_coupling()
    energy, p = req.kinematics.resolve(c.m)
    tol = active_profile()
    rows = []
    for l in range(-req.l_max, req.l_max + 1):
        try:
            rec = scattering.phase_shift_record(c, energy, l, tol=tol)
        except SupercriticalError:
            rows.append({"l": l, "delta_ab": None, "delta_a": None,
                         "delta_total": None, "re_s": None, "im_s": None,
                         "abs_s": None, "regime": "supercritical"})
            continue
        rows.append({
            "l": rec.l,
            "delta_ab": rec.delta_ab,
            "delta_a": rec.delta_a,
            "delta_total": rec.delta_total,
            "re_s": rec.s_matrix.real,
            "im_s": rec.s_matrix.imag,
            "abs_s": abs(rec.s_matrix),
            "regime": "subcritical",
        })
    config = _config_dict(req.coupling, command="phase_shifts",
                          energy=energy, momentum=p, l_max=req.l_max)
    return TableResponse(config=config, rows=rows)


def wavefunction_handler(req: WavefunctionRequest) -> TableResponse:
    c = req.coupling.to_coupling()
    tol = active_profile()
    grid = req.r_grid.build() if req.r_grid is not None else None
    if req.n is not None:
        st = dirac_energy(c, req.l, req.n)
        sol = radial.normalize(radial.bound_radial(c, st, grid, tol=tol),
                               tol=tol)
        config = _config_dict(req.coupling, command="wavefunction",
                              kind="bound", l=req.l, n=req.n,
                              energy=st.energy / c.m)
    else:
        sol, params = radial.continuum_radial(c, req.energy, req.l, grid,
                                              tol=tol)
        config = _config_dict(req.coupling, command="wavefunction",
                              kind="continuum", l=req.l,
                              energy=req.energy, momentum=params.p,
                              xi=params.xi)
    rows = [{"r": float(r), "f": float(f), "g": float(g)}
            for r, f, g in zip(sol.grid, sol.f, sol.g)]
    return TableResponse(config=config, rows=rows)


def validate_handler(req: ValidateRequest) -> TableResponse:
    tol = active_profile(req.tolerance_profile)
    report = validation.run_suite(
        tuple(req.checks) if req.checks is not None else None,
        tol=tol, tolerance_overrides=req.tolerance_overrides or None)
    config = {
        "command": "validate",
        "tolerance_profile": tol.name,
        "checks": list(req.checks) if req.checks is not None
        else list(validation.SUITE_NAMES),
        "tolerance_overrides": dict(req.tolerance_overrides),
    }
    return TableResponse(config=config, rows=[], validation=report.as_dict())


def _config_dict(coupling: CouplingParams, **extra) -> dict:
    cfg = {"command": extra.pop("command"),
           "a": coupling.a, "flux": coupling.flux, "mass": coupling.mass,
           "eta": coupling.eta}
    cfg.update(extra)
    return cfg


_HTTP_CONFIG = 400
_HTTP_DOMAIN = 422


def _translate(exc: AbcoulombError) -> HTTPException:
    if isinstance(exc, (ConfigError,)):
        return HTTPException(status_code=_HTTP_CONFIG, detail=str(exc))
    if isinstance(exc, (SupercriticalError, DomainError, ForwardSingularity,
                        InadmissibleQuantumNumber, ZeroCouplingError)):
        return HTTPException(status_code=_HTTP_DOMAIN, detail=str(exc))
    return HTTPException(status_code=500, detail=str(exc))


def create_app() -> FastAPI:
    app = FastAPI(title="abcoulomb",
                  description="Flux line + 2D Coulomb planar Dirac observables",
                  version="0.1.0")

    def _run(handler, request):
        try:
            return handler(request)
        except AbcoulombError as exc:
            raise _translate(exc) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/v1/spectrum", response_model=TableResponse)
    def spectrum(request: SpectrumRequest) -> TableResponse:
        return _run(spectrum_handler, request)

    @app.post("/v1/cross-section", response_model=TableResponse)
    def cross_section(request: CrossSectionRequest) -> TableResponse:
        return _run(cross_section_handler, request)

    @app.post("/v1/phase-shifts", response_model=TableResponse)
    def phase_shifts_endpoint(request: PhaseShiftsRequest) -> TableResponse:
        return _run(phase_shifts_handler, request)

    @app.post("/v1/wavefunction", response_model=TableResponse)
    def wavefunction(request: WavefunctionRequest) -> TableResponse:
        return _run(wavefunction_handler, request)

    @app.post("/v1/validate", response_model=TableResponse)
    def validate(request: ValidateRequest) -> TableResponse:
        return _run(validate_handler, request)

    return app


app = create_app()
