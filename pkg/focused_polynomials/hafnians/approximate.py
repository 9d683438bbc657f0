"""
Approximate hafnians of symmetric matrices with positive off-diagonal entries.

The hafnian ignores the diagonal, so the diagonal may be replaced to make the matrix
positive semidefinite. A PSD matrix is the Gram matrix of vectors c_1, ..., c_m, and by
Wick's formula haf C is the Gaussian integral of <c_1, x> ... <c_m, x>, which the
subspace estimator approximates when all cosines c_ij / sqrt(c_ii c_jj) are positive.
"""
from typing import Any, Union
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import eigh

from . import MIN_EIGENVALUE, PSD, PSD_TOLERANCE, SHIFT_MARGIN
from ..exceptions import NotFocusedError, ValidationError
from ..integration.estimator import (
    EstimateReport,
    EstimatorConfig,
    estimate_gaussian_integral,
)
from ..matchings import SymMatrix, as_sym_matrix
from ..polynomials import FocusedPolynomial
from ..utils import get_logger

ShiftPolicy = Union[str, float]


@dataclass(frozen=True, eq=False)
class HafnianInstance:
    """
    An even-order symmetric matrix with strictly positive off-diagonal entries, and how
    to choose its diagonal: keep it (PSD), shift by the smallest eigenvalue of the
    zero-diagonal matrix (MIN_EIGENVALUE), or put an explicit value lambda on it.
    """

    matrix: SymMatrix
    shift_policy: ShiftPolicy = MIN_EIGENVALUE

    def __post_init__(self):
        matrix = as_sym_matrix(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        size = matrix.size
        if size < 2 or size % 2:
            raise ValidationError(f"Need a matrix of even order at least 2, got {size}.")
        off_diagonal = matrix.entries[~np.eye(size, dtype=bool)]
        if np.any(off_diagonal <= 0):
            raise ValidationError("All off-diagonal entries should be strictly positive.")
        if isinstance(self.shift_policy, str):
            if self.shift_policy not in (PSD, MIN_EIGENVALUE):
                raise ValidationError(f"Unknown shift policy {self.shift_policy!r}.")
        elif not np.isfinite(self.shift_policy):
            raise ValidationError(f"The diagonal value should be finite, got {self.shift_policy}.")


@dataclass(frozen=True, eq=False)
class PreparedHafnian:
    vectors: np.ndarray
    delta: float
    shift: float
    shifted: np.ndarray


def gram_decompose(matrix: Any) -> np.ndarray:
    """
    Rows c_i with <c_i, c_j> = C_ij, from the symmetric eigendecomposition
    (so singular PSD matrices are fine).
    """
    entries = as_sym_matrix(matrix).entries
    eigenvalues, eigenvectors = eigh(entries)
    scale = max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0)))
    if eigenvalues.size and eigenvalues[0] < -PSD_TOLERANCE * scale:
        raise ValidationError(
            f"The matrix is not positive semidefinite (smallest eigenvalue {eigenvalues[0]:.6g})."
        )
    return eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))


def prepare_instance(instance: HafnianInstance) -> PreparedHafnian:
    """Choose the diagonal, decompose, and certify that all cosines are positive."""
    entries = np.array(instance.matrix.entries)
    size = instance.matrix.size
    if instance.shift_policy == PSD:
        shift = float("nan")
        shifted = entries
    else:
        zero_diagonal = entries - np.diag(np.diag(entries))
        if instance.shift_policy == MIN_EIGENVALUE:
            smallest = float(eigh(zero_diagonal, eigvals_only=True)[0])
            shift = max(0.0, -smallest) + SHIFT_MARGIN
        else:
            shift = float(instance.shift_policy)
        shifted = zero_diagonal + shift * np.eye(size)
    get_logger().debug(f"Diagonal shift: {shift}")

    diagonal = np.diag(shifted)
    if np.any(diagonal <= 0):
        raise NotFocusedError("The diagonal needs to be positive for the subspace method to apply.")
    cosines = shifted / np.sqrt(np.outer(diagonal, diagonal))
    off_diagonal = cosines + np.diag(np.full(size, np.inf))
    i, j = np.unravel_index(int(np.argmin(off_diagonal)), off_diagonal.shape)
    delta = float(off_diagonal[i, j])
    if delta <= 0:
        raise NotFocusedError(
            f"Entries {i + 1} and {j + 1} give cosine {delta:.6g}; the method does not apply.",
            min_cosine=delta,
            witness=(int(i), int(j)),
        )
    return PreparedHafnian(
        vectors=gram_decompose(shifted), delta=delta, shift=shift, shifted=shifted
    )


def approx_hafnian(instance: HafnianInstance, cfg: EstimatorConfig) -> EstimateReport:
    """Estimate haf C as the Gaussian integral of prod_i <c_i, x> over random subspaces."""
    prepared = prepare_instance(instance)
    size = instance.matrix.size
    product = FocusedPolynomial(
        n=size,
        m=size,
        generators=prepared.vectors,
        terms=[(tuple(range(size)), 1.0)],
    )
    report = estimate_gaussian_integral(product, cfg)
    return replace(
        report,
        delta_used=prepared.delta,
        details=dict(
            shift=None if instance.shift_policy == PSD else prepared.shift,
            shift_policy=instance.shift_policy,
        ),
    )
