"""Brute-force cross-checks: dense eigensolver, spin-chain ED, density report.

The eigensolver is implemented in-repo (Householder reduction to Hessenberg
form plus shifted QR sweeps with complex Givens rotations) so that the
closed-form spectra are checked against something that shares no code with
them.  Hermitian inputs may take a fast symmetric path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import NoConvergence, TooLarge
from .model import FieldConfig

MAX_DENSE_N = 4096
MAX_SITES_HERMITIAN = 12
MAX_SITES_GENERAL = 8

_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class DenseMatrix:
    """Square complex matrix with a size guard."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SpinChainSpec:
    """Even-length ring of spins with a per-site transverse field."""

    num_sites: int
    field_pattern: tuple[complex, ...]


@dataclass(frozen=True)
class CrosscheckReport:
    """Finite-size ED energy densities against the thermodynamic value."""

    thermo_value: float
    sizes: tuple[int, ...]
    densities: tuple[float, ...]
    gaps: tuple[float, ...]
    monotone: bool
    final_gap: float


def dense_matrix(entries: np.ndarray) -> DenseMatrix:
    entries = np.asarray(entries, dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {entries.shape}")
    if entries.shape[0] > MAX_DENSE_N:
        raise TooLarge(f"matrix dimension {entries.shape[0]} exceeds {MAX_DENSE_N}")
    return DenseMatrix(entries=entries)


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Reduce to upper Hessenberg form by Householder reflections."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for j in range(n - 2):
        x = h[j + 1 :, j].copy()
        nx = np.linalg.norm(x)
        if nx < 1e-300:
            continue
        e = np.zeros_like(x)
        ph = x[0] / abs(x[0]) if abs(x[0]) > 0 else 1.0
        e[0] = ph * nx
        v = x + e
        nv = np.linalg.norm(v)
        if nv < 1e-300:
            continue
        v = v / nv
        h[j + 1 :, j:] -= 2.0 * np.outer(v, v.conj() @ h[j + 1 :, j:])
        h[:, j + 1 :] -= 2.0 * np.outer(h[:, j + 1 :] @ v, v.conj())
        h[j + 2 :, j] = 0.0
    return h


def _givens(f: complex, g: complex) -> tuple[float, complex]:
    """Rotation (c, s) with c real zeroing g in (f, g)^T."""
    if g == 0:
        return 1.0, 0.0 + 0j
    if f == 0:
        return 0.0, np.conj(g) / abs(g)
    r = np.hypot(abs(f), abs(g))
    c = abs(f) / r
    s = (f / abs(f)) * np.conj(g) / r
    return c, s


def dense_eigenvalues(m: DenseMatrix | np.ndarray, hermitian: bool | None = None,
                      max_sweeps_factor: int = 100) -> np.ndarray:
    """All eigenvalues, sorted by (real, imaginary).

    Shifted QR iteration on the Hessenberg form; Wilkinson shifts with an
    exceptional shift every 12 stagnant sweeps; raises NoConvergence past
    max_sweeps_factor*n sweeps.  hermitian=None autodetects and routes
    Hermitian inputs to the symmetric fast path.
    """
    a = m.entries if isinstance(m, DenseMatrix) else dense_matrix(m).entries
    n = a.shape[0]
    if hermitian is None:
        hermitian = bool(np.max(np.abs(a - a.conj().T)) < 1e-12 * max(1.0, np.max(np.abs(a))))
    if hermitian:
        return np.sort(np.linalg.eigvalsh(a)).astype(complex)

    h = _hessenberg(a)
    eigs: list[complex] = []
    hi = n - 1
    total = 0
    cap = max_sweeps_factor * n
    stagnant = 0
    eps = np.finfo(float).eps
    while hi >= 0:
        if hi == 0:
            eigs.append(h[0, 0])
            break
        deflated = False
        for i in range(hi, 0, -1):
            if abs(h[i, i - 1]) <= eps * (abs(h[i - 1, i - 1]) + abs(h[i, i])) + 1e-300:
                h[i, i - 1] = 0.0
                if i == hi:
                    eigs.append(h[hi, hi])
                    hi -= 1
                    deflated = True
                    stagnant = 0
                break
        if deflated:
            continue
        total += 1
        stagnant += 1
        if total > cap:
            raise NoConvergence(f"QR iteration exceeded {cap} sweeps at block size {hi + 1}")
        aa, bb = h[hi - 1, hi - 1], h[hi - 1, hi]
        cc, dd = h[hi, hi - 1], h[hi, hi]
        tr = aa + dd
        det = aa * dd - bb * cc
        disc = np.sqrt(tr * tr / 4 - det + 0j)
        mu1, mu2 = tr / 2 + disc, tr / 2 - disc
        mu = mu1 if abs(mu1 - dd) <= abs(mu2 - dd) else mu2
        if stagnant % 12 == 0:
            mu = dd + 0.75 * abs(h[hi, hi - 1])
        # explicit shifted QR sweep on the active block [0..hi]
        mdim = hi + 1
        rot: list[tuple[float, complex]] = []
        for i in range(mdim):
            h[i, i] -= mu
        for i in range(mdim - 1):
            c, s = _givens(h[i, i], h[i + 1, i])
            rot.append((c, s))
            r0 = h[i, i:mdim].copy()
            r1 = h[i + 1, i:mdim].copy()
            h[i, i:mdim] = c * r0 + s * r1
            h[i + 1, i:mdim] = -np.conj(s) * r0 + c * r1
        for i in range(mdim - 1):
            c, s = rot[i]
            top = min(i + 2, mdim)
            c0 = h[0:top, i].copy()
            c1 = h[0:top, i + 1].copy()
            h[0:top, i] = c * c0 + np.conj(s) * c1
            h[0:top, i + 1] = -s * c0 + c * c1
        for i in range(mdim):
            h[i, i] += mu
    out = np.array(eigs)
    order = np.lexsort((out.imag, out.real))
    return out[order]


def spectrum_match_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max pairing distance between two eigenvalue multisets.

    Lexicographic sorting mispairs conjugate partners whose real parts
    tie up to rounding noise, so values are matched greedily to the
    nearest remaining partner instead.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex).copy()
    if a.shape != b.shape:
        raise ValueError(f"multiset sizes differ: {a.shape} vs {b.shape}")
    order = np.lexsort((a.imag, a.real))
    used = np.zeros(b.size, dtype=bool)
    worst = 0.0
    for i in order:
        d = np.abs(b - a[i])
        d[used] = np.inf
        j = int(np.argmin(d))
        used[j] = True
        worst = max(worst, float(d[j]))
    return worst


def make_spin_chain_spec(config: FieldConfig, num_cells: int) -> SpinChainSpec:
    num_sites = 2 * int(num_cells)
    pattern = tuple(config.field_pattern(num_sites))
    cap = MAX_SITES_HERMITIAN if config.kind == "real" else MAX_SITES_GENERAL
    if num_sites > cap:
        raise TooLarge(f"{num_sites} sites exceeds the {cap}-site ED cap for kind {config.kind!r}")
    return SpinChainSpec(num_sites=num_sites, field_pattern=pattern)


def spin_hamiltonian(spec: SpinChainSpec) -> DenseMatrix:
    """Dense -sum_j (s^z_j s^z_{j+1} + g_j s^x_j) on the periodic ring."""
    L = spec.num_sites
    if L % 2 != 0:
        raise ValueError(f"ring length must be even, got {L}")
    if 2 ** L > MAX_DENSE_N:
        raise TooLarge(f"Hilbert dimension 2^{L} exceeds {MAX_DENSE_N}")
    dim = 2 ** L
    H = np.zeros((dim, dim), dtype=complex)
    for j in range(L):
        ops = [_I2] * L
        ops[j] = _SZ
        ops[(j + 1) % L] = _SZ
        H -= reduce(np.kron, ops)
        ops = [_I2] * L
        ops[j] = _SX
        H -= spec.field_pattern[j] * reduce(np.kron, ops)
    return DenseMatrix(entries=H)


def crosscheck_energy_density(config: FieldConfig, sizes: list[int],
                              num_k: int = 2001) -> CrosscheckReport:
    """Spin-chain ED energy density per cell against the k-space value.

    The boundary parity term of the fermion mapping is dropped in the
    k-space result, so finite-size ED can only approach it; the report
    records the per-size gap, whether the gaps are non-increasing, and the
    gap at the largest size.
    """
    from .spectral import ground_energy_density

    thermo = ground_energy_density(config, num_k)
    densities = []
    for n_cells in sizes:
        spec = make_spin_chain_spec(config, n_cells)
        evals = dense_eigenvalues(spin_hamiltonian(spec))
        ground = min(evals, key=lambda z: z.real)
        densities.append(float(ground.real) / n_cells)
    gaps = [abs(d - thermo) for d in densities]
    monotone = all(gaps[i + 1] <= gaps[i] + 1e-12 for i in range(len(gaps) - 1))
    return CrosscheckReport(
        thermo_value=thermo,
        sizes=tuple(int(s) for s in sizes),
        densities=tuple(densities),
        gaps=tuple(gaps),
        monotone=monotone,
        final_gap=gaps[-1] if gaps else float("nan"),
    )
