"""Request/response schemas and handlers for every computation.

The handlers are plain functions over pydantic models; the FastAPI app
and the command-line front end are both thin clients of the same
handlers (the CLI calls them in process, nothing goes over a socket).
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .errors import IsingtopError
from .model import TWO_PI, FieldConfig, bloch_matrix, make_field_config, momentum_grid, realspace_matrix
from .oracle import dense_eigenvalues, crosscheck_energy_density, spectrum_match_distance
from .phase import classify, scan_energy
from .spectral import branch_continuous_factors, spectral_factors
from .topology import chern_analytic, chern_curvature, loop_trace

SCHEMA_VERSION = 1


class FieldParams(BaseModel):
    kind: Literal["real", "complex"]
    a: float
    b: float

    def to_config(self) -> FieldConfig:
        return make_field_config(self.kind, self.a, self.b)


class SpectrumRequest(BaseModel):
    field: FieldParams
    n_k: int = 2001


class EnergyRequest(BaseModel):
    field: FieldParams
    num_k: int = 2001


class ScanRequest(BaseModel):
    kind: Literal["real", "complex"]
    start: tuple[float, float]
    end: tuple[float, float]
    samples: int = 301
    num_k: int = 2001
    z: float = 8.0


class ChernRequest(BaseModel):
    field: FieldParams
    method: Literal["analytic", "curvature", "both"] = "both"
    n_k: int = 2001
    n_phi: int = 256


class ChernGridRequest(BaseModel):
    kind: Literal["real", "complex"]
    a_range: tuple[float, float]
    b_range: tuple[float, float]
    steps: int = Field(default=41, ge=2)
    n_k: int = 2001


class WindingRequest(BaseModel):
    field: FieldParams
    n_k: int = 2001


class LoopRequest(BaseModel):
    field: FieldParams
    n_k: int = 2001


class OracleRequest(BaseModel):
    field: FieldParams
    sizes: list[int] = Field(default_factory=lambda: [2, 3, 4])
    num_k: int = 2001


class SpectrumResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    n_k: int
    columns: list[str]
    rows: list[list[float]]


class EnergyResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    num_k: int
    energy: float


class CriticalPoint(BaseModel):
    index: int
    a: float
    b: float
    p: float


class ScanResponse(BaseModel):
    schema_version: int
    command: str
    kind: str
    start: tuple[float, float]
    end: tuple[float, float]
    samples: int
    num_k: int
    z: float
    threshold: float
    criticals: list[CriticalPoint]
    columns: list[str]
    rows: list[list[float]]


class ChernMethodResult(BaseModel):
    raw: float
    snapped: float
    residual: float
    n_k: int
    n_phi: int


class ChernResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    region: str
    raw: float
    snapped: float
    residual: float
    methods_agree: Optional[bool]
    analytic: Optional[ChernMethodResult]
    curvature: Optional[ChernMethodResult]


class ChernGridResponse(BaseModel):
    schema_version: int
    command: str
    kind: str
    steps: int
    n_k: int
    columns: list[str]
    rows: list[list[float]]


class WindingResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    n_k: int
    raw: float
    winding: float
    boundary: bool


class LoopResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    n_k: int
    winding_raw: float
    winding: float
    boundary: bool
    columns: list[str]
    rows: list[list[float]]


class RealspaceCheck(BaseModel):
    N: int
    max_diff: float


class OracleResponse(BaseModel):
    schema_version: int
    command: str
    field: FieldParams
    p: float
    num_k: int
    thermo_energy: float
    sizes: list[int]
    densities: list[float]
    gaps: list[float]
    monotone: bool
    final_gap: float
    realspace: list[RealspaceCheck]
    det_residual_max: float


def _snap_half(w: float) -> float:
    return round(2.0 * w) / 2.0


def handle_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    config = req.field.to_config()
    ks = TWO_PI * np.arange(req.n_k) / req.n_k
    rows = []
    for f in branch_continuous_factors(config, ks):
        pair = -(f.eps_plus + f.eps_minus)
        rows.append([f.k, f.eps_plus.real, f.eps_plus.imag,
                     f.eps_minus.real, f.eps_minus.imag, pair.real, pair.imag])
    return SpectrumResponse(
        schema_version=SCHEMA_VERSION, command="spectrum", field=req.field,
        p=config.p, n_k=req.n_k,
        columns=["k", "eps_plus_re", "eps_plus_im", "eps_minus_re",
                 "eps_minus_im", "pair_re", "pair_im"],
        rows=rows,
    )


def handle_energy(req: EnergyRequest) -> EnergyResponse:
    from .spectral import ground_energy_density

    config = req.field.to_config()
    return EnergyResponse(
        schema_version=SCHEMA_VERSION, command="energy", field=req.field,
        p=config.p, num_k=req.num_k,
        energy=ground_energy_density(config, req.num_k),
    )


def handle_scan(req: ScanRequest) -> ScanResponse:
    start = make_field_config(req.kind, *req.start)
    end = make_field_config(req.kind, *req.end)
    res = scan_energy(start, end, req.samples, req.num_k, req.z)
    rows = [[float(res.params[i, 0]), float(res.params[i, 1]),
             float(res.energies[i]), float(res.second_derivative[i])]
            for i in range(req.samples)]
    crits = [CriticalPoint(index=i, a=float(res.params[i, 0]), b=float(res.params[i, 1]),
                           p=res.config_at(i).p)
             for i in res.critical_indices]
    return ScanResponse(
        schema_version=SCHEMA_VERSION, command="scan", kind=req.kind,
        start=req.start, end=req.end, samples=req.samples, num_k=req.num_k,
        z=req.z, threshold=res.threshold, criticals=crits,
        columns=["a", "b", "energy", "d2e"], rows=rows,
    )


def handle_chern(req: ChernRequest) -> ChernResponse:
    config = req.field.to_config()
    analytic = curvature = None
    if req.method in ("analytic", "both"):
        r = chern_analytic(config, req.n_k)
        analytic = ChernMethodResult(raw=r.raw, snapped=r.snapped,
                                     residual=r.residual, n_k=req.n_k, n_phi=0)
    if req.method in ("curvature", "both"):
        r = chern_curvature(config, req.n_k, req.n_phi)
        curvature = ChernMethodResult(raw=r.raw, snapped=r.snapped,
                                      residual=r.residual, n_k=req.n_k, n_phi=req.n_phi)
    lead = analytic or curvature
    agree = None
    if analytic and curvature:
        agree = analytic.snapped == curvature.snapped
    return ChernResponse(
        schema_version=SCHEMA_VERSION, command="chern", field=req.field,
        p=config.p, region=classify(config).label,
        raw=lead.raw, snapped=lead.snapped, residual=lead.residual,
        methods_agree=agree, analytic=analytic, curvature=curvature,
    )


def handle_chern_grid(req: ChernGridRequest) -> ChernGridResponse:
    rows = []
    a_vals = np.linspace(req.a_range[0], req.a_range[1], req.steps)
    b_vals = np.linspace(req.b_range[0], req.b_range[1], req.steps)
    for a in a_vals:
        for b in b_vals:
            config = make_field_config(req.kind, float(a), float(b))
            r = chern_analytic(config, req.n_k)
            rows.append([float(a), float(b), config.p, r.snapped])
    return ChernGridResponse(
        schema_version=SCHEMA_VERSION, command="chern-grid", kind=req.kind,
        steps=req.steps, n_k=req.n_k,
        columns=["a", "b", "p", "chern"], rows=rows,
    )


def handle_winding(req: WindingRequest) -> WindingResponse:
    config = req.field.to_config()
    trace = loop_trace(config, req.n_k)
    return WindingResponse(
        schema_version=SCHEMA_VERSION, command="winding", field=req.field,
        p=config.p, n_k=req.n_k, raw=trace.winding,
        winding=_snap_half(trace.winding), boundary=trace.boundary,
    )


def handle_loop(req: LoopRequest) -> LoopResponse:
    config = req.field.to_config()
    trace = loop_trace(config, req.n_k)
    rows = [[float(v) for v in row] for row in trace.samples]
    return LoopResponse(
        schema_version=SCHEMA_VERSION, command="loop", field=req.field,
        p=config.p, n_k=req.n_k, winding_raw=trace.winding,
        winding=_snap_half(trace.winding), boundary=trace.boundary,
        columns=["k", "x", "y"], rows=rows,
    )


def handle_oracle(req: OracleRequest) -> OracleResponse:
    config = req.field.to_config()
    report = crosscheck_energy_density(config, req.sizes, req.num_k)

    realspace = []
    for N in (2, 4, 8):
        rs = realspace_matrix(config, N)
        rs_eigs = dense_eigenvalues(rs.entries)
        bloch_union = np.concatenate([
            dense_eigenvalues(bloch_matrix(config, float(k)).entries)
            for k in momentum_grid(N)
        ])
        realspace.append(RealspaceCheck(
            N=N, max_diff=spectrum_match_distance(rs_eigs, bloch_union)))

    det_max = 0.0
    for m in range(16):
        k = TWO_PI * (m + 0.5) / 16
        h = bloch_matrix(config, k).entries
        f = spectral_factors(config, k)
        for rho in (1, -1):
            for eps in (f.eps_plus, f.eps_minus):
                det_max = max(det_max, abs(np.linalg.det(h - (-rho * eps) * np.eye(4))))

    return OracleResponse(
        schema_version=SCHEMA_VERSION, command="oracle", field=req.field,
        p=config.p, num_k=req.num_k, thermo_energy=report.thermo_value,
        sizes=list(report.sizes), densities=list(report.densities),
        gaps=list(report.gaps), monotone=report.monotone,
        final_gap=report.final_gap, realspace=realspace,
        det_residual_max=det_max,
    )


def build_app() -> FastAPI:
    """HTTP surface over the handlers; one POST route per command."""
    app = FastAPI(title="isingtop", version=__version__)

    @app.exception_handler(IsingtopError)
    def isingtop_error(request: Request, exc: IsingtopError):
        return JSONResponse(status_code=422, content={
            "error": type(exc).__name__, "message": str(exc)})

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest):
        return handle_spectrum(req)

    @app.post("/energy", response_model=EnergyResponse)
    def energy(req: EnergyRequest):
        return handle_energy(req)

    @app.post("/scan", response_model=ScanResponse)
    def scan(req: ScanRequest):
        return handle_scan(req)

    @app.post("/chern", response_model=ChernResponse)
    def chern(req: ChernRequest):
        return handle_chern(req)

    @app.post("/chern-grid", response_model=ChernGridResponse)
    def chern_grid(req: ChernGridRequest):
        return handle_chern_grid(req)

    @app.post("/winding", response_model=WindingResponse)
    def winding(req: WindingRequest):
        return handle_winding(req)

    @app.post("/loop", response_model=LoopResponse)
    def loop(req: LoopRequest):
        return handle_loop(req)

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest):
        return handle_oracle(req)

    return app
