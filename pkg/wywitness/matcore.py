"""Dense complex-matrix foundation for states and observables.

Matrices are plain ``numpy`` arrays of ``complex128``. Density matrices wrap such an
array together with their bipartite factor dimensions and a validity flag. Every
function here is pure; arrays stored on a ``DensityMatrix`` are read-only.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from wywitness.exceptions import (
    DimensionMismatch,
    InvalidState,
    NonHermitianInput,
    NumericalFailure,
    ParamOutOfRange,
    ParseError,
)
from wywitness.utils import NOISE_FLOOR, VALIDITY_TOL, resolve_tol

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray
Observable = np.ndarray

SUBSYSTEMS: Tuple[str, ...] = ("A", "B")

_PAULIS = {
    "I": ((1, 0), (0, 1)),
    "X": ((0, 1), (1, 0)),
    "Y": ((0, -1j), (1j, 0)),
    "Z": ((1, 0), (0, -1)),
}


def as_matrix(m) -> ComplexMatrix:
    """Returns ``m`` as a square complex128 array.

    Raises:
        DimensionMismatch: If ``m`` is not a square two-dimensional array.

    """
    array = np.asarray(m, dtype=np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
        raise DimensionMismatch(
            f"Expected a non-empty square matrix, got {array.shape}."
        )
    return array


def _frozen(m: ComplexMatrix) -> ComplexMatrix:
    array = np.array(m, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def hermiticity_error(m: ComplexMatrix) -> float:
    """Returns max |M[i][j] - conj(M[j][i])|."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: ComplexMatrix, tol: Optional[float] = None) -> bool:
    """Returns True if ``m`` is Hermitian within ``tol``."""
    return hermiticity_error(m) <= resolve_tol(tol, VALIDITY_TOL)


def commutes(a: ComplexMatrix, b: ComplexMatrix, tol: Optional[float] = None) -> bool:
    """Returns True if ``a`` and ``b`` commute within ``tol`` (max-entry norm)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot commute shapes {a.shape} and {b.shape}.")
    return float(np.max(np.abs(a @ b - b @ a))) <= resolve_tol(tol, VALIDITY_TOL)


def identity(dim: int) -> ComplexMatrix:
    """Returns the dim x dim identity."""
    return np.eye(dim, dtype=np.complex128)


def ket(bits: str) -> np.ndarray:
    """Returns the computational basis vector for a bit string like ``"01"``."""
    if not bits or any(bit not in "01" for bit in bits):
        raise ParseError(f"'{bits}' is not a bit string", 0)
    vector = np.zeros(2 ** len(bits), dtype=np.complex128)
    vector[int(bits, 2)] = 1
    return vector


def projector(vector: Sequence[complex]) -> ComplexMatrix:
    """Returns |v><v| for a column vector ``v``."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Returns the Kronecker product a ⊗ b."""
    return np.kron(as_matrix(a), as_matrix(b))


def pauli(which: str) -> ComplexMatrix:
    """Returns the 2x2 Pauli matrix for ``"I"``, ``"X"``, ``"Y"`` or ``"Z"``.

    Examples:
        >>> pauli("Z").real.tolist()
        [[1.0, 0.0], [0.0, -1.0]]

    """
    try:
        return np.array(_PAULIS[which], dtype=np.complex128)
    except KeyError:
        raise ParseError(f"'{which}' is not one of I, X, Y, Z", 0) from None


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Attributes:
        eigenvalues: Real eigenvalues in descending order.
        eigenvectors: Unitary matrix whose columns are the matching eigenvectors.

    """

    eigenvalues: np.ndarray
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """Returns V diag(λ) V†."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def apply(self, fn) -> ComplexMatrix:
        """Returns the matrix function V diag(fn(λ)) V†."""
        v = self.eigenvectors
        return (v * fn(self.eigenvalues)) @ v.conj().T


def eig_hermitian(m: ComplexMatrix, tol: Optional[float] = None) -> Spectrum:
    """Diagonalizes a Hermitian matrix.

    Args:
        m: Matrix to diagonalize.
        tol: Hermiticity tolerance.

    Raises:
        NonHermitianInput: If ``m`` is not Hermitian within ``tol``.
        NumericalFailure: If the eigensolver does not converge.

    Returns:
        The spectrum with eigenvalues sorted in descending order. Degenerate
        eigenspaces get an arbitrary orthonormal basis.

    """
    m = as_matrix(m)
    error = hermiticity_error(m)
    if error > resolve_tol(tol, VALIDITY_TOL):
        raise NonHermitianInput(f"Matrix is not Hermitian (max deviation {error:.3g}).")
    try:
        values, vectors = np.linalg.eigh((m + m.conj().T) / 2)
    except np.linalg.LinAlgError as error:
        raise NumericalFailure(f"Eigendecomposition failed: {error}") from error
    return Spectrum(
        eigenvalues=values[::-1].copy(), eigenvectors=vectors[:, ::-1].copy()
    )


def _principal_branch(values: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(values))))
    cleaned = np.where(np.abs(values) <= NOISE_FLOOR * scale, 0.0, values)
    # sqrt of a negative real with +0j imaginary part lands on +i|λ|^½
    return np.sqrt(cleaned.astype(np.complex128))


def principal_sqrt(m: ComplexMatrix, tol: Optional[float] = None) -> ComplexMatrix:
    """Returns the principal square root of a Hermitian, possibly indefinite, matrix.

    Each eigenvalue λ is mapped to √λ when λ ≥ 0 and to i√|λ| when λ < 0, so the
    result of a partially transposed entangled state is genuinely complex.
    Eigenvalues within rounding noise of zero are mapped to zero.

    Raises:
        NonHermitianInput: If ``m`` is not Hermitian within ``tol``.

    """
    spectrum = eig_hermitian(m, tol)
    return spectrum.apply(_principal_branch)


def unitary_from_hermitian(h: ComplexMatrix, theta: float) -> ComplexMatrix:
    """Returns exp(-iθH) computed through the eigendecomposition of H."""
    spectrum = eig_hermitian(h)
    return spectrum.apply(lambda values: np.exp(-1j * theta * values))


def random_hermitian(dim: int, seed: int, scale: float = 1.0) -> ComplexMatrix:
    """Returns a seeded random Hermitian matrix, generally indefinite."""
    if dim < 1:
        raise ParamOutOfRange(f"Dimension must be positive, got {dim}.")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + g.conj().T) / 2


def _ginibre_state(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def default_dims(dim: int) -> Tuple[int, int]:
    """Splits ``dim`` into the most balanced factor pair (dimA <= dimB)."""
    dim_a = int(np.floor(np.sqrt(dim)))
    while dim % dim_a:
        dim_a -= 1
    return dim_a, dim // dim_a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A trace-one Hermitian matrix on a bipartite space.

    Partially transposed matrices are carried by the same type; for those
    ``is_valid_state`` may be False.

    Attributes:
        matrix: Read-only complex128 array.
        dims: Bipartite factor dimensions (dimA, dimB).
        is_valid_state: True if the matrix is positive semidefinite.

    """

    matrix: ComplexMatrix
    dims: Tuple[int, int]
    is_valid_state: bool

    @classmethod
    def from_array(
        cls,
        m,
        dims: Optional[Tuple[int, int]] = None,
        tol: Optional[float] = None,
    ) -> DensityMatrix:
        """Validates a matrix and wraps it as a DensityMatrix.

        Args:
            m: Square array-like.
            dims: Bipartite factor dimensions. Defaults to ``default_dims``.
            tol: Validity tolerance for trace, Hermiticity and positivity.

        Raises:
            DimensionMismatch: If ``dims`` does not factor the matrix dimension.
            NonHermitianInput: If the matrix is not Hermitian.
            InvalidState: If the trace is not one.

        """
        tol = resolve_tol(tol, VALIDITY_TOL)
        array = as_matrix(m)
        dim = array.shape[0]
        dims = default_dims(dim) if dims is None else (int(dims[0]), int(dims[1]))
        if dims[0] < 1 or dims[1] < 1 or dims[0] * dims[1] != dim:
            raise DimensionMismatch(
                f"Factor dimensions {dims} do not multiply to {dim}."
            )
        spectrum = eig_hermitian(array, tol)
        trace = complex(np.trace(array))
        min_eigenvalue = float(spectrum.eigenvalues[-1])
        if abs(trace - 1) > tol:
            raise InvalidState(
                f"Trace is {trace.real:.12g}{trace.imag:+.3g}j, expected 1.",
                trace=trace,
                min_eigenvalue=min_eigenvalue,
            )
        return cls(_frozen(array), dims, min_eigenvalue >= -tol)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    @property
    def spectrum(self) -> Spectrum:
        return eig_hermitian(self.matrix)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.spectrum.eigenvalues[-1])

    def require_valid(self, what: str = "This operation") -> None:
        """Raises InvalidState unless the matrix is positive semidefinite."""
        if not self.is_valid_state:
            min_eigenvalue = self.min_eigenvalue
            raise InvalidState(
                f"{what} requires a valid state, "
                f"but the minimum eigenvalue is {min_eigenvalue:.6g}.",
                trace=self.trace,
                min_eigenvalue=min_eigenvalue,
            )

    def require_observable(self, a: Observable) -> Observable:
        """Returns ``a`` as an array, checking it acts on this state's space."""
        a = as_matrix(a)
        if a.shape != self.matrix.shape:
            raise DimensionMismatch(
                f"Observable of shape {a.shape} does not act on a state of "
                f"dimension {self.dim}."
            )
        return a

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(dims={self.dims}, "
            f"is_valid_state={self.is_valid_state})"
        )


def partial_transpose_matrix(
    m: ComplexMatrix, dims: Tuple[int, int], subsystem: str = "B"
) -> ComplexMatrix:
    """Transposes the indices of one tensor factor of a bipartite matrix.

    Examples:
        >>> m = np.arange(16).reshape(4, 4)
        >>> partial_transpose_matrix(m, (2, 2), "A").real.astype(int)[0].tolist()
        [0, 1, 8, 9]

    Raises:
        DimensionMismatch: If ``subsystem`` is unknown or ``dims`` do not fit ``m``.

    """
    m = as_matrix(m)
    dim_a, dim_b = dims
    if dim_a * dim_b != m.shape[0]:
        raise DimensionMismatch(f"Factor dimensions {dims} do not fit {m.shape}.")
    blocks = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if subsystem == "A":
        swapped = blocks.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        swapped = blocks.transpose(0, 3, 2, 1)
    else:
        raise DimensionMismatch(
            f"Subsystem must be one of {SUBSYSTEMS}, not {subsystem!r}."
        )
    return swapped.reshape(m.shape)


def partial_transpose(
    rho: DensityMatrix, subsystem: str = "B", tol: Optional[float] = None
) -> DensityMatrix:
    """Returns the partial transpose of ``rho`` over subsystem ``"A"`` or ``"B"``.

    Trace and Hermiticity are preserved; ``is_valid_state`` is re-evaluated from
    the spectrum of the transposed matrix.

    """
    tol = resolve_tol(tol, VALIDITY_TOL)
    transposed = partial_transpose_matrix(rho.matrix, rho.dims, subsystem)
    min_eigenvalue = float(eig_hermitian(transposed, tol).eigenvalues[-1])
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "Partial transpose over %s has minimum eigenvalue %.6g",
            subsystem,
            min_eigenvalue,
        )
    return DensityMatrix(_frozen(transposed), rho.dims, min_eigenvalue >= -tol)


def partial_trace(
    m: ComplexMatrix, dims: Sequence[int], keep: Sequence[int]
) -> ComplexMatrix:
    """Traces out every tensor factor of ``m`` except those listed in ``keep``.

    Args:
        m: Square matrix on the space of dimension prod(dims).
        dims: Dimension of each tensor factor.
        keep: Indices of the factors to keep, in increasing order.

    """
    m = as_matrix(m)
    dims = list(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionMismatch(f"Factor dimensions {dims} do not fit {m.shape}.")
    keep = sorted(keep)
    n = len(dims)
    tensor_form = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # Trace the highest factor first so lower axis numbers stay valid
    for offset, axis in enumerate(sorted(traced, reverse=True)):
        remaining = n - offset
        tensor_form = np.trace(tensor_form, axis1=axis, axis2=axis + remaining)
    kept_dim = int(np.prod([dims[i] for i in keep])) if keep else 1
    return tensor_form.reshape(kept_dim, kept_dim)


def random_density(
    dim: int, seed: int, dims: Optional[Tuple[int, int]] = None
) -> DensityMatrix:
    """Returns a seeded full-rank random state G·G†/Tr(G·G†).

    G is drawn from the standard complex Gaussian ensemble of
    ``numpy.random.default_rng(seed)``; the same seed gives the same state.

    Raises:
        ParamOutOfRange: If ``dim`` is less than 2.

    """
    if dim < 2:
        raise ParamOutOfRange(f"Dimension must be at least 2, got {dim}.")
    rng = np.random.default_rng(seed)
    return DensityMatrix.from_array(_ginibre_state(dim, rng), dims)


def random_separable(dim_a: int, dim_b: int, terms: int, seed: int) -> DensityMatrix:
    """Returns a seeded random separable state Σ q_k ρ_A^k ⊗ ρ_B^k.

    Raises:
        ParamOutOfRange: If a dimension is less than 2 or ``terms`` is less than 1.

    """
    if dim_a < 2 or dim_b < 2:
        raise ParamOutOfRange(f"Dimensions must be at least 2, got ({dim_a}, {dim_b}).")
    if terms < 1:
        raise ParamOutOfRange(
            f"A separable mixture needs at least one term, got {terms}."
        )
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=np.complex128)
    for weight in weights:
        rho += weight * np.kron(_ginibre_state(dim_a, rng), _ginibre_state(dim_b, rng))
    return DensityMatrix.from_array(rho, (dim_a, dim_b))
