"""Staggered transverse-field Ising ring: spectra, phases, topology."""

__version__ = "0.1.0"

from .errors import (
    ComplexEnergy,
    ComplexSpectrum,
    DegenerateMode,
    GapClosed,
    IsingtopError,
    NoConvergence,
    NonFiniteParameter,
    OriginHit,
    SizeTooSmall,
    TooLarge,
)
from .model import (
    BlochMatrix,
    FieldConfig,
    RealSpaceMatrix,
    bloch_matrix,
    make_field_config,
    momentum_grid,
    realspace_matrix,
)
from .oracle import (
    CrosscheckReport,
    DenseMatrix,
    SpinChainSpec,
    crosscheck_energy_density,
    dense_eigenvalues,
    make_spin_chain_spec,
    spectrum_match_distance,
    spin_hamiltonian,
)
from .phase import PhaseRegion, PhaseScanResult, classify, scan_energy
from .spectral import (
    EigenSystem,
    EigenvectorFactorDiagnostic,
    SpectralFactors,
    adjoint_config,
    branch_continuous_factors,
    eigensystem,
    eigenvector_factor_diagnostic,
    ground_energy_density,
    pair_energy_sum,
    pair_energy_sum_grid,
    spectral_factors,
)
from .topology import (
    AngleTrack,
    ChernResult,
    LoopTrace,
    TwoLevelSystem,
    berry_connection,
    berry_curvature,
    chern_analytic,
    chern_curvature,
    chern_plaquette,
    loop_trace,
    theta,
    theta_track,
    two_level,
)

__all__ = [name for name in dir() if not name.startswith("_")]
