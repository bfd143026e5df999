"""Closed-form spectra, biorthonormal eigensystems, ground-state energy.

Quasiparticle energies of the 4x4 momentum block come in two branches

    eps_sigma = sqrt(2) * sqrt(g1^2 + g2^2 + sigma*A + 2),
    A = sqrt((g1^2 - g2^2)^2 + 4 g1^2 + 8 g1 g2 cos k + 4 g2^2),

with block eigenvalues -rho*eps_sigma, rho, sigma = +/-1.  Principal
square-root branches everywhere; along a k-path branch continuity is
restored by nearest-value continuation.

For the complex field family g1 g2 = eta^2 + xi^2 and the pair sum
eps_{++} + eps_{+-} stays real even where the individual eps_sigma turn
complex (they form a conjugate pair); the energy-density guard therefore
tests the imaginary part of the pair sum, not of each branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexEnergy, DegenerateMode, SizeTooSmall
from .model import TWO_PI, FieldConfig, bloch_matrix

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SpectralFactors:
    """Closed-form factors (A, eps_+, eps_-) at one (config, k)."""

    k: float
    A: complex
    eps_plus: complex
    eps_minus: complex

    @property
    def branch_collision(self) -> bool:
        """True where the two branches collide (A ~ 0)."""
        return abs(self.A) < 1e-9


@dataclass(frozen=True)
class EigenMode:
    rho: int
    sigma: int
    value: complex
    right: np.ndarray
    left: np.ndarray


@dataclass(frozen=True)
class EigenSystem:
    """Four biorthonormal modes of one momentum block.

    degenerate=True marks coinciding eigenvalues (gap closure or
    exceptional point); the vectors are then raw null-space vectors and no
    biorthonormal scaling is applied.
    """

    k: float
    modes: tuple[EigenMode, ...]
    degenerate: bool

    def mode(self, rho: int, sigma: int) -> EigenMode:
        for m in self.modes:
            if m.rho == rho and m.sigma == sigma:
                return m
        raise KeyError((rho, sigma))


@dataclass(frozen=True)
class EigenvectorFactorDiagnostic:
    """Published component formulas evaluated verbatim, never asserted."""

    lambda_c: complex
    eta_c: complex
    xi_c: complex
    omega: complex
    agreement: float


def spectral_factors(config: FieldConfig, k: float) -> SpectralFactors:
    """Closed-form (A, eps_+, eps_-), principal branches."""
    g1, g2 = config.g1, config.g2
    a2 = (g1 * g1 - g2 * g2) ** 2 + 4.0 * g1 * g1 + 8.0 * g1 * g2 * math.cos(k) + 4.0 * g2 * g2
    A = np.sqrt(complex(a2))
    base = g1 * g1 + g2 * g2 + 2.0
    eps_p = _SQRT2 * np.sqrt(complex(base + A))
    eps_m = _SQRT2 * np.sqrt(complex(base - A))
    return SpectralFactors(k=float(k), A=complex(A), eps_plus=complex(eps_p), eps_minus=complex(eps_m))


def branch_continuous_factors(config: FieldConfig, ks: np.ndarray) -> list[SpectralFactors]:
    """spectral_factors along a k-path with nearest-value continuation.

    At each step the (eps_+, eps_-) labels are permuted to minimize the
    jump from the previous sample; collisions stay flagged via A ~ 0.
    """
    out: list[SpectralFactors] = []
    for k in ks:
        f = spectral_factors(config, float(k))
        if out:
            prev = out[-1]
            keep = abs(f.eps_plus - prev.eps_plus) + abs(f.eps_minus - prev.eps_minus)
            swap = abs(f.eps_minus - prev.eps_plus) + abs(f.eps_plus - prev.eps_minus)
            if swap < keep:
                f = SpectralFactors(k=f.k, A=-f.A, eps_plus=f.eps_minus, eps_minus=f.eps_plus)
        out.append(f)
    return out


def pair_energy_sum(config: FieldConfig, k: float) -> complex:
    """Ground-pair energy eps_{++} + eps_{+-} = -(eps_+ + eps_-) at one k."""
    f = spectral_factors(config, k)
    return -(f.eps_plus + f.eps_minus)


def pair_energy_sum_grid(config: FieldConfig, ks: np.ndarray) -> np.ndarray:
    """Vectorized pair sums over a k-grid."""
    g1, g2 = config.g1, config.g2
    ks = np.asarray(ks, dtype=float)
    a2 = (g1 * g1 - g2 * g2) ** 2 + 4.0 * g1 * g1 + 8.0 * g1 * g2 * np.cos(ks) + 4.0 * g2 * g2
    A = np.sqrt(a2.astype(complex))
    base = g1 * g1 + g2 * g2 + 2.0
    return -(_SQRT2 * np.sqrt(base + A) + _SQRT2 * np.sqrt(base - A))


def ground_energy_density(config: FieldConfig, num_k: int = 2001) -> float:
    """Ground-state energy per two-site cell, trapezoid over the k-grid.

    Equals (1/(2*num_k)) * sum_k (eps_{++} + eps_{+-}); -2.0 at zero field.
    """
    num_k = int(num_k)
    if num_k < 16:
        raise SizeTooSmall(f"need at least 16 k-points, got {num_k}")
    ks = TWO_PI * np.arange(num_k) / num_k
    pair = pair_energy_sum_grid(config, ks)
    im = float(np.max(np.abs(pair.imag)))
    if im > 1e-8:
        raise ComplexEnergy(f"pair energies not real on the k-grid (max |Im| = {im:.3e})")
    return float(np.sum(pair.real)) / (2.0 * num_k)


def adjoint_config(config: FieldConfig) -> FieldConfig:
    """Config whose block matrix is the conjugate transpose of config's."""
    if config.kind == "real":
        return config
    return FieldConfig("complex", config.a, -config.b)


def _null_vector(m: np.ndarray) -> np.ndarray:
    """Unit vector spanning the (numerical) null space of m."""
    _, _, vh = np.linalg.svd(m)
    return vh[-1].conj()


def eigensystem(config: FieldConfig, k: float) -> EigenSystem:
    """Numeric left/right eigenvector pairs for the analytic eigenvalues.

    Right vectors come from SVD null spaces of (h_k - value*I); left
    vectors from the conjugate-transpose construction (the xi -> -xi
    config); pairs are scaled to left.right = 1 and the largest-modulus
    right component is made real positive.
    """
    f = spectral_factors(config, k)
    h = bloch_matrix(config, k).entries
    hd = bloch_matrix(adjoint_config(config), k).entries
    eye = np.eye(4, dtype=complex)
    labels = [(+1, +1), (+1, -1), (-1, +1), (-1, -1)]
    values = {(rho, sigma): -rho * (f.eps_plus if sigma > 0 else f.eps_minus)
              for rho, sigma in labels}

    vals = list(values.values())
    degenerate = any(abs(vals[i] - vals[j]) < 1e-9
                     for i in range(4) for j in range(i + 1, 4))

    modes = []
    for rho, sigma in labels:
        lam = values[(rho, sigma)]
        right = _null_vector(h - lam * eye)
        wleft = _null_vector(hd - np.conj(lam) * eye)
        left = wleft.conj()
        j = int(np.argmax(np.abs(right)))
        right = right * (abs(right[j]) / right[j])
        if not degenerate:
            left = left / (left @ right)
        modes.append(EigenMode(rho=rho, sigma=sigma, value=complex(lam), right=right, left=left))
    return EigenSystem(k=float(k), modes=tuple(modes), degenerate=degenerate)


def eigenvector_factor_diagnostic(config: FieldConfig, k: float, rho: int,
                                  sigma: int) -> EigenvectorFactorDiagnostic:
    """Evaluate the published component formulas and record their overlap.

    The published expressions mix terms of inconsistent degree and their
    normalization squares components without conjugation, so agreement is
    recorded in [0, 1], never asserted.
    """
    sys = eigensystem(config, k)
    if sys.degenerate:
        raise DegenerateMode(f"coinciding eigenvalues at k = {k}")
    f = spectral_factors(config, k)
    g1, g2 = config.g1, config.g2
    eps = f.eps_plus if sigma > 0 else f.eps_minus
    sA = sigma * f.A
    lam_c = math.sin(0.5 * k) * ((g1 - g2) ** 2 + sA + rho * eps * (g1 - g2))
    eta_c = -1j * (2.0 * g1 * math.cos(k) + 2.0 * g2
                   + 0.5 * (rho * eps - 2.0 * g2) * (g1 * g1 - g2 * g2 - sA))
    xi_c = 1j * math.cos(0.5 * k) * ((g1 + g2) ** 2 + sA - rho * eps * (g1 + g2))
    third = -2.0 * g1 * math.sin(k)
    omega = eta_c ** 2 + xi_c ** 2 + 4.0 * g1 * g1 * math.sin(k) ** 2 + lam_c ** 2

    v = np.array([eta_c, xi_c, third, lam_c], dtype=complex)
    nv = np.linalg.norm(v)
    u = sys.mode(rho, sigma).right
    if nv < 1e-300:
        agreement = 0.0
    else:
        agreement = float(abs(np.vdot(v / nv, u / np.linalg.norm(u))) ** 2)
    return EigenvectorFactorDiagnostic(
        lambda_c=complex(lam_c), eta_c=complex(eta_c), xi_c=complex(xi_c),
        omega=complex(omega), agreement=agreement,
    )
