"""Uncertainty quantities: variance, skew information, U-quantity and correlations.

All quantities are returned as complex scalars because they are also evaluated on
partially transposed matrices, where the square root of the state is complex. For
valid states the imaginary parts vanish up to rounding.

"""

import logging
from dataclasses import dataclass

import numpy as np

from wywitness.matcore import (
    DensityMatrix,
    Observable,
    identity,
    principal_sqrt,
)

logger = logging.getLogger(__name__)


def _trace_product(*matrices: np.ndarray) -> complex:
    product = matrices[0]
    for matrix in matrices[1:]:
        product = product @ matrix
    return complex(np.trace(product))


def expectation(rho: DensityMatrix, a: Observable) -> complex:
    """Returns Tr(ρA)."""
    a = rho.require_observable(a)
    return _trace_product(rho.matrix, a)


def variance(rho: DensityMatrix, a: Observable) -> complex:
    """Returns V(ρ,A) = Tr(ρA²) - (Tr ρA)².

    Raises:
        DimensionMismatch: If ``a`` does not act on the space of ``rho``.

    """
    a = rho.require_observable(a)
    mean = _trace_product(rho.matrix, a)
    return _trace_product(rho.matrix, a, a) - mean ** 2


def skew_information(rho: DensityMatrix, a: Observable) -> complex:
    """Returns the Wigner-Yanase skew information I(ρ,A) = Tr(ρA²) - Tr(√ρA√ρA).

    ``rho`` only needs to be Hermitian; on a partial transpose with negative
    eigenvalues the principal square root makes the result complex.

    Raises:
        DimensionMismatch: If ``a`` does not act on the space of ``rho``.

    """
    a = rho.require_observable(a)
    root = principal_sqrt(rho.matrix)
    return _trace_product(rho.matrix, a, a) - _trace_product(root, a, root, a)


def u_quantity_squared(rho: DensityMatrix, a: Observable) -> complex:
    """Returns U²(ρ,A) = V² - (V - I)², the squared quantum share of the variance."""
    v = variance(rho, a)
    i = skew_information(rho, a)
    return v ** 2 - (v - i) ** 2


def wy_correlation(rho: DensityMatrix, a: Observable, b: Observable) -> complex:
    """Returns the Wigner-Yanase correlation Tr(ρA*B) - Tr(√ρA*√ρB).

    A* is the entrywise complex conjugate of ``a`` in the computational basis.

    """
    a = rho.require_observable(a)
    b = rho.require_observable(b)
    a_star = a.conj()
    root = principal_sqrt(rho.matrix)
    return _trace_product(rho.matrix, a_star, b) - _trace_product(root, a_star, root, b)


def covariance(rho: DensityMatrix, a: Observable, b: Observable) -> complex:
    """Returns Cov(A,B) = Tr(ρAB) - Tr(ρA)Tr(ρB)."""
    a = rho.require_observable(a)
    b = rho.require_observable(b)
    return _trace_product(rho.matrix, a, b) - _trace_product(
        rho.matrix, a
    ) * _trace_product(rho.matrix, b)


def fluctuation_operator(rho: DensityMatrix, a: Observable) -> Observable:
    """Returns A₀ = A - Tr(ρA)·𝟙."""
    a = rho.require_observable(a)
    return a - _trace_product(rho.matrix, a) * identity(rho.dim)


def _eigenbasis_elements(rho: DensityMatrix, a: Observable):
    a = rho.require_observable(a)
    spectrum = rho.spectrum
    vectors = spectrum.eigenvectors
    elements = vectors.conj().T @ a @ vectors
    # Rounding may leave -1e-17 on a PSD state; the lower bound is defined on λ >= 0
    values = np.clip(spectrum.eigenvalues, 0.0, None)
    return values, np.abs(elements) ** 2


def skew_info_lower_bound(rho: DensityMatrix, a: Observable) -> float:
    """Returns the measurable lower bound I^L(ρ,A) = ¼ Σᵢⱼ (λᵢ - λⱼ)² |Aᵢⱼ|².

    Aᵢⱼ are the matrix elements of ``a`` in the eigenbasis of ``rho``.

    Raises:
        InvalidState: If ``rho`` is not positive semidefinite.

    """
    rho.require_valid("The skew-information lower bound")
    values, weights = _eigenbasis_elements(rho, a)
    gaps = (values[:, None] - values[None, :]) ** 2
    return float(np.sum(gaps * weights) / 4)


def skew_information_spectral(rho: DensityMatrix, a: Observable) -> float:
    """Returns I(ρ,A) = ½ Σᵢⱼ (√λᵢ - √λⱼ)² |Aᵢⱼ|² from the spectrum of a valid state.

    Raises:
        InvalidState: If ``rho`` is not positive semidefinite.

    """
    rho.require_valid("The spectral skew information")
    values, weights = _eigenbasis_elements(rho, a)
    roots = np.sqrt(values)
    gaps = (roots[:, None] - roots[None, :]) ** 2
    return float(np.sum(gaps * weights) / 2)


@dataclass(frozen=True)
class UncertaintyProfile:
    """Variance and its decomposition for one (state, observable) pair.

    Attributes:
        variance: V(ρ,A).
        skew_info: I(ρ,A), the quantum share of the variance.
        classical_part: C(ρ,A) = V - I, the classical-mixing share.
        u_squared: U²(ρ,A) = V² - C².

    """

    variance: complex
    skew_info: complex
    classical_part: complex
    u_squared: complex

    @property
    def u(self) -> complex:
        """Principal square root of ``u_squared``."""
        return complex(np.sqrt(complex(self.u_squared)))


def uncertainty_profile(rho: DensityMatrix, a: Observable) -> UncertaintyProfile:
    """Computes the variance, skew information, classical part and U² together."""
    v = variance(rho, a)
    i = skew_information(rho, a)
    c = v - i
    profile = UncertaintyProfile(
        variance=v, skew_info=i, classical_part=c, u_squared=v ** 2 - c ** 2
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Uncertainty profile %s", profile)
    return profile
