"""Energy-density scans along parameter rays and phase classification.

A ray interpolates linearly between two configs of the same kind.  The
derivative of the energy density jumps where |p| crosses 1; the scanner
flags those samples with a robust spike test: centered second differences
d2E are detrended by the midpoint of their neighbors (lifting out the
smooth background), and a sample is critical where that spike statistic
exceeds median + z*MAD of the ray (z = 8 by default).  The first and last
few samples are never flagged (one-sided stencils are unreliable there).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ComplexEnergy, SizeTooSmall
from .model import FieldConfig, make_field_config
from .spectral import ground_energy_density

EDGE_GUARD = 5  # samples at each ray end excluded from flagging


@dataclass(frozen=True)
class PhaseScanResult:
    start: FieldConfig
    end: FieldConfig
    params: np.ndarray  # (samples, 2) of (a, b) along the ray
    energies: np.ndarray
    second_derivative: np.ndarray  # NaN at the two endpoints
    spike: np.ndarray  # detrended |d2E| statistic, NaN where undefined
    threshold: float
    critical_indices: tuple[int, ...]

    @property
    def criticals(self) -> tuple[tuple[float, float], ...]:
        """(a, b) parameter pairs at the detected criticals."""
        return tuple((float(self.params[i, 0]), float(self.params[i, 1]))
                     for i in self.critical_indices)

    def config_at(self, i: int) -> FieldConfig:
        return make_field_config(self.start.kind, self.params[i, 0], self.params[i, 1])


@dataclass(frozen=True)
class PhaseRegion:
    label: str  # "I", "II" or "Boundary"
    p: float


def thread_count() -> int:
    """Worker cap from ISINGTOP_THREADS (integer >= 1, default 1)."""
    raw = os.environ.get("ISINGTOP_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ISINGTOP_THREADS must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"ISINGTOP_THREADS must be an integer >= 1, got {raw!r}")
    return n


def scan_energy(start: FieldConfig, end: FieldConfig, samples: int = 301,
                num_k: int = 2001, z: float = 8.0) -> PhaseScanResult:
    """Energy density along a linear ray with critical-sample detection.

    Samples are evaluated independently (optionally in threads) and
    assembled by index, so results are identical to a sequential run.
    ComplexEnergy failures carry the first offending sample index.
    """
    if start.kind != end.kind:
        raise ValueError(f"ray endpoints must share a kind, got {start.kind!r} and {end.kind!r}")
    samples = int(samples)
    if samples < 64:
        raise SizeTooSmall(f"need at least 64 samples, got {samples}")
    ts = np.linspace(0.0, 1.0, samples)
    params = np.column_stack([
        start.a + (end.a - start.a) * ts,
        start.b + (end.b - start.b) * ts,
    ])
    h = float(np.hypot(end.a - start.a, end.b - start.b)) / (samples - 1)
    if h == 0.0:
        raise ValueError("ray endpoints coincide")

    def one(i: int) -> float:
        cfg = make_field_config(start.kind, params[i, 0], params[i, 1])
        return ground_energy_density(cfg, num_k)

    energies = np.empty(samples)
    workers = thread_count()
    if workers == 1:
        for i in range(samples):
            try:
                energies[i] = one(i)
            except ComplexEnergy as exc:
                raise ComplexEnergy(str(exc), sample_index=i) from None
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one, i) for i in range(samples)]
        for i, fut in enumerate(futures):
            err = fut.exception()
            if isinstance(err, ComplexEnergy):
                raise ComplexEnergy(str(err), sample_index=i) from None
            if err is not None:
                raise err
            energies[i] = fut.result()

    d2 = np.full(samples, np.nan)
    d2[1:-1] = (energies[2:] - 2.0 * energies[1:-1] + energies[:-2]) / h ** 2
    spike = np.full(samples, np.nan)
    spike[2:-2] = np.abs(d2[2:-2] - 0.5 * (d2[1:-3] + d2[3:-1]))

    ok = ~np.isnan(spike)
    med = float(np.median(spike[ok]))
    mad = float(np.median(np.abs(spike[ok] - med)))
    threshold = med + float(z) * mad
    idx = np.arange(samples)
    flagged = np.where(ok & (spike > threshold)
                       & (idx >= EDGE_GUARD) & (idx <= samples - 1 - EDGE_GUARD))[0]

    crits: list[int] = []
    run: list[int] = []
    for i in flagged:
        if run and i != run[-1] + 1:
            crits.append(max(run, key=lambda j: spike[j]))
            run = []
        run.append(int(i))
    if run:
        crits.append(max(run, key=lambda j: spike[j]))

    return PhaseScanResult(
        start=start, end=end, params=params, energies=energies,
        second_derivative=d2, spike=spike, threshold=threshold,
        critical_indices=tuple(sorted(crits)),
    )


def classify(config: FieldConfig, tol: float = 1e-9) -> PhaseRegion:
    """Region I for |p| < 1, II for |p| > 1, Boundary within tol of 1."""
    p = config.p
    if abs(abs(p) - 1.0) <= tol:
        return PhaseRegion(label="Boundary", p=p)
    if abs(p) < 1.0:
        return PhaseRegion(label="I", p=p)
    return PhaseRegion(label="II", p=p)
