"""Staggered transverse-field Ising ring and its quadratic-fermion matrices.

The chain has 2N sites with transverse field g_j alternating between two
values: g1 on odd sites, g2 on even sites (1-based site labels, so the
0-based site 0 carries g1).  Two field families are supported:

* real:    g1, g2 independent real numbers,
* complex: g1 = eta - i*xi, g2 = eta + i*xi (a conjugate pair).

Either way the product p = g1*g2 (= eta^2 + xi^2 for the complex family)
is real; |p| = 1 is the gap-closure locus.

After the fermion mapping the Hamiltonian splits into 4x4 momentum blocks
h_k in the Nambu basis (a_k, b_k, a_{-k}^dag, b_{-k}^dag).  The block
stored here carries the full matrix (eigenvalues are the physical
quasiparticle energies directly; some references print h_k/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteParameter, SizeTooSmall

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FieldConfig:
    """Validated field parameters, kind is 'real' or 'complex'."""

    kind: str
    a: float
    b: float

    @property
    def g1(self) -> complex:
        return complex(self.a) if self.kind == "real" else complex(self.a, -self.b)

    @property
    def g2(self) -> complex:
        return complex(self.b) if self.kind == "real" else complex(self.a, self.b)

    @property
    def p(self) -> float:
        """Real product g1*g2 (eta^2 + xi^2 for the complex kind)."""
        if self.kind == "real":
            return self.a * self.b
        return self.a * self.a + self.b * self.b

    def field_pattern(self, num_sites: int) -> list[complex]:
        """Per-site field values g_j, g1 on site 0 and alternating."""
        g1, g2 = self.g1, self.g2
        return [g1 if j % 2 == 0 else g2 for j in range(num_sites)]


@dataclass(frozen=True)
class BlochMatrix:
    """4x4 momentum block h_k; basis (a_k, b_k, a_{-k}^dag, b_{-k}^dag)."""

    k: float
    entries: np.ndarray


@dataclass(frozen=True)
class RealSpaceMatrix:
    """4N x 4N quadratic-form matrix; basis (c_1..c_2N, c_1^dag..c_2N^dag)."""

    num_cells: int
    entries: np.ndarray


def make_field_config(kind: str, a: float, b: float) -> FieldConfig:
    """Validate and build a FieldConfig.

    kind 'real' takes (g1, g2); kind 'complex' takes (eta, xi).
    """
    if kind not in ("real", "complex"):
        raise ValueError(f"kind must be 'real' or 'complex', got {kind!r}")
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NonFiniteParameter(f"field parameters must be finite, got ({a}, {b})")
    return FieldConfig(kind, a, b)


def bloch_matrix(config: FieldConfig, k: float) -> BlochMatrix:
    """Momentum block h_k of the quadratic Hamiltonian.

    k is reduced into [0, 2pi).  Diagonal (2g2, 2g1, -2g2, -2g1); hopping
    -2cos(k/2) couples the two sublattice modes; pairing +/-2i sin(k/2)
    couples particles to holes.
    """
    if not math.isfinite(k):
        raise NonFiniteParameter(f"momentum must be finite, got {k}")
    k = float(k) % TWO_PI
    g1, g2 = config.g1, config.g2
    c = math.cos(0.5 * k)
    s = math.sin(0.5 * k)
    h = np.array(
        [
            [g2, -c, 0.0, -1j * s],
            [-c, g1, -1j * s, 0.0],
            [0.0, 1j * s, -g2, c],
            [1j * s, 0.0, c, -g1],
        ],
        dtype=complex,
    )
    return BlochMatrix(k=k, entries=2.0 * h)


def realspace_matrix(config: FieldConfig, N: int) -> RealSpaceMatrix:
    """Quadratic-form matrix of the 2N-site periodic ring.

    Block form [[A, B], [-B, -A^T]] with A = 2*diag(g_j) minus the cyclic
    hopping (every bond -1) and B the antisymmetric cyclic pairing.  Its
    eigenvalue multiset equals the union of bloch_matrix spectra over
    k = 2*pi*m/N, m = 0..N-1.
    """
    N = int(N)
    if N < 2:
        raise SizeTooSmall(f"need at least 2 unit cells, got {N}")
    L = 2 * N
    gs = config.field_pattern(L)
    A = np.zeros((L, L), dtype=complex)
    B = np.zeros((L, L), dtype=complex)
    for i in range(L):
        A[i, i] = 2.0 * gs[i]
        j = (i + 1) % L
        A[i, j] += -1.0
        A[j, i] += -1.0
        B[i, j] += -1.0
        B[j, i] += +1.0
    M = np.block([[A, B], [-B, -A.T]])
    return RealSpaceMatrix(num_cells=N, entries=M)


def momentum_grid(N: int) -> np.ndarray:
    """Allowed momenta k = 2*pi*m/N of an N-cell ring."""
    return TWO_PI * np.arange(N) / N
