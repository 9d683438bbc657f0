from typing import Any
from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError

# Brute-force enumerations are for cross-checking only
HAFNIAN_ORACLE_CAP = 12
PERMANENT_ORACLE_CAP = 8


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense symmetric matrix; entries are symmetrized on construction."""

    entries: np.ndarray

    def __post_init__(self):
        entries = as_square_matrix(self.entries)
        scale = max(1.0, float(np.max(np.abs(entries), initial=0.0)))
        if np.max(np.abs(entries - entries.T), initial=0.0) > 1e-12 * scale:
            raise ValidationError("Expected a symmetric matrix.")
        entries = (entries + entries.T) / 2
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def as_square_matrix(matrix: Any) -> np.ndarray:
    if isinstance(matrix, SymMatrix):
        return matrix.entries
    array = np.array(matrix, dtype=float)
    if array.size == 0:
        return np.zeros((0, 0))
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValidationError(f"Expected a square matrix, got shape {array.shape}.")
    if not np.all(np.isfinite(array)):
        raise ValidationError("The matrix contains non-finite entries.")
    return array


def as_sym_matrix(matrix: Any) -> SymMatrix:
    if isinstance(matrix, SymMatrix):
        return matrix
    return SymMatrix(as_square_matrix(matrix))
