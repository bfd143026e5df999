"""Winding angle, extended two-level family, Berry connection/curvature,
Chern and loop winding numbers.

The in-plane angle is theta(k) = atan2(sin k, cos k - p).  Extending the
pair Hamiltonian with a polar angle phi gives the two-level family

    m(k, phi) = B . sigma,   B = (|B_k| sin phi cos theta,
                                  |B_k| sin phi sin theta, cos phi),

with |B_k| = |2 (eps_{++} + eps_{+-})| and eigenvalues
+/- sqrt(cos^2 phi + |B_k|^2 sin^2 phi).  The lower band carries Chern
number 1 for |p| < 1, 0 for |p| > 1 and 1/2 on |p| = 1.

Sign convention: the literal curvature integral evaluates to -1 in the
|p| < 1 region; every Chern result here is orientation-normalized (the
analytic method returns +total_change/2pi, the grid method carries a
global -1) so that the three methods agree and the invariant is +1 there.

All per-point eigenvectors are built from closed-form 2x2 adjugate
columns; left vectors come from the conjugate (Dirac product, real
field) or independently from the adjugate rows (biorthonormal product,
complex field), scaled to left.right = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexSpectrum, GapClosed, OriginHit, SizeTooSmall
from .model import TWO_PI, FieldConfig
from .spectral import pair_energy_sum, pair_energy_sum_grid

BOUNDARY_TOL = 1e-9
PUNCTURE = 1e-8
SNAP_VALUES = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class AngleTrack:
    k_samples: np.ndarray
    theta: np.ndarray  # continuously unwrapped
    total_change: float
    punctured: bool  # boundary configs skip the origin-touching k


@dataclass(frozen=True)
class TwoLevelSystem:
    k: float
    phi: float
    B: tuple[float, float, float]
    matrix: np.ndarray
    eps: tuple[float, float]


@dataclass(frozen=True)
class ChernResult:
    raw: float
    snapped: float  # one of 0, 0.5, 1
    residual: float
    method: str
    grid: tuple[int, int]


@dataclass(frozen=True)
class LoopTrace:
    samples: np.ndarray  # columns (k, x, y)
    winding: float
    boundary: bool


def _snap(raw: float, method: str, grid: tuple[int, int]) -> ChernResult:
    snapped = min(SNAP_VALUES, key=lambda s: abs(raw - s))
    return ChernResult(raw=float(raw), snapped=snapped,
                       residual=abs(float(raw) - snapped), method=method, grid=grid)


def theta(config: FieldConfig, k: float) -> float:
    """In-plane angle atan2(sin k, cos k - p); OriginHit where undefined."""
    p = config.p
    x = math.cos(k) - p
    y = math.sin(k)
    if math.hypot(x, y) < 1e-12:
        raise OriginHit(f"(cos k - p, sin k) vanishes at k = {k} for p = {p}")
    return math.atan2(y, x)


def _theta_grid(p: float, ks: np.ndarray) -> np.ndarray:
    return np.arctan2(np.sin(ks), np.cos(ks) - p)


def _theta_prime_grid(p: float, ks: np.ndarray) -> np.ndarray:
    """d theta / d k; the 0/0 at |p| = 1, k in {0, pi} has limit 1/2."""
    num = 1.0 - p * np.cos(ks)
    den = 1.0 - 2.0 * p * np.cos(ks) + p * p
    tiny = np.abs(den) < 1e-18
    return np.where(tiny, 0.5, num / np.where(tiny, 1.0, den))


def _wrap(d: np.ndarray) -> np.ndarray:
    return (d + math.pi) % TWO_PI - math.pi


def _babs_grid(config: FieldConfig, ks: np.ndarray) -> np.ndarray:
    """|B_k| on a grid, guarding pair-energy reality."""
    pair = pair_energy_sum_grid(config, ks)
    im = float(np.max(np.abs(pair.imag)))
    if im > 1e-8:
        raise ComplexSpectrum(f"pair energies not real on the k-grid (max |Im| = {im:.3e})")
    return np.abs(2.0 * pair.real)


def _track_span(config: FieldConfig) -> tuple[float, float, bool]:
    """k-interval of the angle track; punctured around the origin touch."""
    p = config.p
    if abs(abs(p) - 1.0) < BOUNDARY_TOL:
        k_star = 0.0 if p > 0 else math.pi
        return k_star + PUNCTURE, k_star + TWO_PI - PUNCTURE, True
    return 0.0, TWO_PI, False


def _wrap_scalar(d: float) -> float:
    return (d + math.pi) % TWO_PI - math.pi


def theta_track(config: FieldConfig, n_k: int) -> AngleTrack:
    """Continuously unwrapped theta over one k-period.

    Uniform sampling plus bisection of any interval whose wrapped jump
    reaches pi/2, so adjacent samples always differ by less than pi/2.
    """
    n_k = int(n_k)
    if n_k < 256:
        raise SizeTooSmall(f"need at least 256 k-points, got {n_k}")
    lo, hi, punctured = _track_span(config)
    p = config.p
    ks_u = np.linspace(lo, hi, n_k + 1)
    th_u = _theta_grid(p, ks_u)
    bad = np.abs(_wrap(np.diff(th_u))) >= 0.5 * math.pi
    if not bad.any():
        ks_arr, th_arr = ks_u, th_u
    else:
        ks = list(ks_u)
        th = list(th_u)
        i = 0
        depth = 0
        while i < len(ks) - 1:
            d = _wrap_scalar(th[i + 1] - th[i])
            if abs(d) >= 0.5 * math.pi and depth < 60 and ks[i + 1] - ks[i] > 1e-15:
                mid = 0.5 * (ks[i] + ks[i + 1])
                ks.insert(i + 1, mid)
                th.insert(i + 1, math.atan2(math.sin(mid), math.cos(mid) - p))
                depth += 1
                continue
            depth = 0
            i += 1
        ks_arr = np.array(ks)
        th_arr = np.array(th)
    unwrapped = np.concatenate([[th_arr[0]], th_arr[0] + np.cumsum(_wrap(np.diff(th_arr)))])
    return AngleTrack(k_samples=ks_arr, theta=unwrapped,
                      total_change=float(unwrapped[-1] - unwrapped[0]), punctured=punctured)


def chern_analytic(config: FieldConfig, n_k: int = 2001) -> ChernResult:
    """Chern number from the winding of theta(k)."""
    track = theta_track(config, n_k)
    raw = track.total_change / TWO_PI
    return _snap(raw, "analytic_winding", (int(n_k), 0))


def two_level(config: FieldConfig, k: float, phi: float) -> TwoLevelSystem:
    """Extended 2x2 Hamiltonian on the {vacuum, pair-excited} basis."""
    th = theta(config, k)
    pair = pair_energy_sum(config, k)
    if abs(pair.imag) > 1e-8:
        raise ComplexSpectrum(f"pair energy not real at k = {k} (Im = {pair.imag:.3e})")
    babs = abs(2.0 * pair.real)
    bx = babs * math.sin(phi) * math.cos(th)
    by = babs * math.sin(phi) * math.sin(th)
    bz = math.cos(phi)
    m = np.array([[bz, bx - 1j * by], [bx + 1j * by, -bz]], dtype=complex)
    e = math.sqrt(bz * bz + babs * babs * math.sin(phi) ** 2)
    return TwoLevelSystem(k=float(k), phi=float(phi), B=(bx, by, bz), matrix=m, eps=(e, -e))


def _lower_pair(config: FieldConfig, k: float, phi: float) -> tuple[np.ndarray, np.ndarray, float]:
    """Lower-band right/left vectors with left.right = 1.

    Gauge: the vacuum component of the right vector is made real positive
    (largest-modulus component when the vacuum one vanishes).  Real
    configs use the Dirac left vector (conjugate); complex configs take
    the left vector independently from the adjugate rows.
    """
    sys = two_level(config, k, phi)
    bx, by, bz = sys.B
    e_up = sys.eps[0]
    if e_up < 1e-9:
        raise GapClosed(f"two-level gap closed at (k, phi) = ({k}, {phi})", k=k, phi=phi)
    # adjugate columns of (m + E) span the eigenvector of -E
    col0 = np.array([e_up - bz, -(bx + 1j * by)], dtype=complex)
    col1 = np.array([-(bx - 1j * by), e_up + bz], dtype=complex)
    right = col0 if np.linalg.norm(col0) >= np.linalg.norm(col1) else col1
    right = right / np.linalg.norm(right)
    idx = 0 if abs(right[0]) > 1e-12 else int(np.argmax(np.abs(right)))
    right = right * (abs(right[idx]) / right[idx])
    if config.kind == "real":
        left = right.conj()
    else:
        row0 = np.array([e_up - bz, -(bx - 1j * by)], dtype=complex)
        row1 = np.array([-(bx + 1j * by), e_up + bz], dtype=complex)
        left = row0 if np.linalg.norm(row0) >= np.linalg.norm(row1) else row1
    left = left / (left @ right)
    return right, left, -e_up


def berry_connection(config: FieldConfig, k: float, phi: float,
                     method: str = "closed") -> tuple[complex, complex]:
    """(A_k, A_phi) of the lower band.

    method 'closed': A_k = -(|B|^2 sin^2 phi / Omega^-) dtheta/dk with
    Omega^- = 2 E (E - cos phi), A_phi = 0.  method 'numeric': centered
    overlap derivatives of the gauge-fixed states, i <L| d |R>.
    """
    if method == "closed":
        babs = float(_babs_grid(config, np.array([k]))[0])
        thp = float(_theta_prime_grid(config.p, np.array([k]))[0])
        e = math.sqrt(math.cos(phi) ** 2 + babs * babs * math.sin(phi) ** 2)
        if e < 1e-9:
            raise GapClosed(f"two-level gap closed at (k, phi) = ({k}, {phi})", k=k, phi=phi)
        om_minus = 2.0 * e * (e - math.cos(phi))
        if abs(om_minus) < 1e-300:
            return 0.0, 0.0  # sin^2 phi vanishes faster at phi = 0
        a_k = -(babs * babs * math.sin(phi) ** 2 / om_minus) * thp
        return a_k, 0.0
    if method == "numeric":
        h = 1e-6
        r0, l0, _ = _lower_pair(config, k, phi)
        rp, _, _ = _lower_pair(config, k + h, phi)
        rm, _, _ = _lower_pair(config, k - h, phi)
        a_k = 1j * (l0 @ ((rp - rm) / (2.0 * h)))
        rp, _, _ = _lower_pair(config, k, phi + h)
        rm, _, _ = _lower_pair(config, k, phi - h)
        a_phi = 1j * (l0 @ ((rp - rm) / (2.0 * h)))
        return complex(a_k), complex(a_phi)
    raise ValueError(f"unknown method {method!r}")


def berry_curvature(config: FieldConfig, k: float, phi: float,
                    method: str = "closed") -> float:
    """Omega_{k phi} of the lower band.

    method 'closed': |B|^2 sin phi dtheta/dk / (2 eps_-^3) with
    eps_- = -E.  method 'plaquette': phase of a micro Wilson loop of
    side 1e-4 around (k, phi).
    """
    if method == "closed":
        babs = float(_babs_grid(config, np.array([k]))[0])
        thp = float(_theta_prime_grid(config.p, np.array([k]))[0])
        e = math.sqrt(math.cos(phi) ** 2 + babs * babs * math.sin(phi) ** 2)
        if e < 1e-9:
            raise GapClosed(f"two-level gap closed at (k, phi) = ({k}, {phi})", k=k, phi=phi)
        return float(babs * babs * math.sin(phi) * thp / (2.0 * (-e) ** 3))
    if method == "plaquette":
        d = 1e-4
        corners = [(k - d / 2, phi - d / 2), (k + d / 2, phi - d / 2),
                   (k + d / 2, phi + d / 2), (k - d / 2, phi + d / 2)]
        states = [_lower_pair(config, kk, pp) for kk, pp in corners]
        w = 1.0 + 0j
        for i in range(4):
            w *= states[i][1] @ states[(i + 1) % 4][0]
        return float(-np.imag(np.log(w)) / (d * d))
    raise ValueError(f"unknown method {method!r}")


def chern_curvature(config: FieldConfig, n_k: int = 512, n_phi: int = 256) -> ChernResult:
    """Chern number from the curvature integral over [0,2pi] x [0,pi].

    Periodic trapezoid in k, composite Simpson in phi (the integrand
    vanishes at the phi poles only linearly in the offset, which a plain
    trapezoid resolves too slowly for the grid-stability contract).
    """
    n_k = int(n_k)
    n_phi = int(n_phi)
    if n_k < 256:
        raise SizeTooSmall(f"need n_k >= 256, got {n_k}")
    if n_phi < 128:
        raise SizeTooSmall(f"need n_phi >= 128, got {n_phi}")
    if n_phi % 2 != 0:
        raise ValueError(f"n_phi must be even for the Simpson rule, got {n_phi}")
    ks = TWO_PI * np.arange(n_k) / n_k
    phis = np.linspace(0.0, math.pi, n_phi + 1)
    babs = _babs_grid(config, ks)
    thp = _theta_prime_grid(config.p, ks)
    b2 = (babs * babs)[:, None]
    e = np.sqrt(np.cos(phis)[None, :] ** 2 + b2 * np.sin(phis)[None, :] ** 2)
    if float(e.min()) < 1e-9:
        i, j = np.unravel_index(int(np.argmin(e)), e.shape)
        raise GapClosed("two-level gap closed on the grid",
                        k=float(ks[i]), phi=float(phis[j]))
    omega = b2 * np.sin(phis)[None, :] * thp[:, None] / (2.0 * (-e) ** 3)
    w = np.ones(n_phi + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    i_phi = (phis[1] - phis[0]) / 3.0 * (omega @ w)
    integral = float(np.sum(i_phi)) * (TWO_PI / n_k)
    return _snap(-integral / TWO_PI, "curvature_grid", (n_k, n_phi))


def chern_plaquette(config: FieldConfig, n_k: int = 128, n_phi: int = 64) -> ChernResult:
    """Chern number from lattice field strength of the link overlaps.

    Wilson-loop phases of the biorthonormal (Dirac, for real configs)
    link products on an (n_k x n_phi) lattice; each plaquette flux stays
    in (-pi, pi), so the sum is the lattice Chern number.  Not defined at
    boundary configs (theta has no value at the origin touch).
    """
    n_k = int(n_k)
    n_phi = int(n_phi)
    if n_k < 32 or n_phi < 16:
        raise SizeTooSmall(f"lattice too coarse: ({n_k}, {n_phi})")
    if abs(abs(config.p) - 1.0) < BOUNDARY_TOL:
        raise OriginHit(f"plaquette lattice undefined at |p| = 1 (p = {config.p})")
    ks = TWO_PI * np.arange(n_k + 1) / n_k
    phis = np.linspace(0.0, math.pi, n_phi + 1)
    babs = _babs_grid(config, ks)
    th = _theta_grid(config.p, ks)
    sphi = np.sin(phis)[None, :]
    bx = (babs * np.cos(th))[:, None] * sphi
    by = (babs * np.sin(th))[:, None] * sphi
    bz = np.broadcast_to(np.cos(phis)[None, :], bx.shape)
    e = np.sqrt(bz ** 2 + (babs ** 2)[:, None] * sphi ** 2)
    # adjugate columns/rows of (m + E), branch chosen per point
    c0 = np.stack([e - bz, -(bx + 1j * by)], axis=-1)
    c1 = np.stack([-(bx - 1j * by), e + bz], axis=-1)
    use0 = (np.linalg.norm(c0, axis=-1) >= np.linalg.norm(c1, axis=-1))[..., None]
    right = np.where(use0, c0, c1)
    right = right / np.linalg.norm(right, axis=-1, keepdims=True)
    if config.kind == "real":
        left = right.conj()
    else:
        r0 = np.stack([e - bz, -(bx - 1j * by)], axis=-1)
        r1 = np.stack([-(bx + 1j * by), e + bz], axis=-1)
        left = np.where(use0, r0, r1)
        left = left / np.sum(left * right, axis=-1, keepdims=True)
    u_k = np.sum(left[:-1, :, :] * right[1:, :, :], axis=-1)  # link along k
    u_phi = np.sum(left[:, :-1, :] * right[:, 1:, :], axis=-1)  # link along phi
    w = u_k[:, :-1] * u_phi[1:, :] / (u_k[:, 1:] * u_phi[:-1, :])
    flux = np.angle(w)  # counterclockwise plaquette phase, in (-pi, pi]
    return _snap(float(np.sum(flux)) / TWO_PI, "plaquette_grid", (n_k, n_phi))


def loop_trace(config: FieldConfig, n_k: int = 2001) -> LoopTrace:
    """Parameter-plane loop (x, y) = |B_k| (cos theta, sin theta).

    Non-boundary loops close exactly (duplicated endpoint); boundary
    configs trace the punctured open arc, reported with winding 1/2 and
    the boundary flag.
    """
    n_k = int(n_k)
    if n_k < 256:
        raise SizeTooSmall(f"need at least 256 k-points, got {n_k}")
    lo, hi, boundary = _track_span(config)
    ks = np.linspace(lo, hi, n_k + 1)
    babs = _babs_grid(config, ks)
    th = _theta_grid(config.p, ks)
    x = babs * np.cos(th)
    y = babs * np.sin(th)
    if not boundary:
        x[-1] = x[0]
        y[-1] = y[0]
    cross = x[:-1] * (y[1:] - y[:-1]) - y[:-1] * (x[1:] - x[:-1])
    winding = float(np.sum(cross / (x[:-1] ** 2 + y[:-1] ** 2))) / TWO_PI
    return LoopTrace(samples=np.column_stack([ks, x, y]), winding=winding, boundary=boundary)
