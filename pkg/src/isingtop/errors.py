"""Exception types shared across the package."""


class IsingtopError(Exception):
    """Base class for all package errors."""


class NonFiniteParameter(IsingtopError):
    """A field parameter is NaN or infinite."""


class SizeTooSmall(IsingtopError):
    """Requested lattice / grid size below the supported minimum."""


class TooLarge(IsingtopError):
    """Dense matrix dimension above the safety cap."""


class DegenerateMode(IsingtopError):
    """Two eigenvalues coincide; eigenvectors are not separable."""


class ComplexEnergy(IsingtopError):
    """Energy density acquired an imaginary part (broken regime)."""

    def __init__(self, message: str, sample_index: int | None = None):
        super().__init__(message)
        self.sample_index = sample_index


class ComplexSpectrum(IsingtopError):
    """Pair-energy spectrum not real on the k-grid (broken regime)."""


class GapClosed(IsingtopError):
    """Two-level gap vanished at some (k, phi)."""

    def __init__(self, message: str, k: float | None = None, phi: float | None = None):
        super().__init__(message)
        self.k = k
        self.phi = phi


class OriginHit(IsingtopError):
    """The (cos k - p, sin k) vector vanished; theta undefined."""


class NoConvergence(IsingtopError):
    """QR iteration failed to deflate within the sweep cap."""
