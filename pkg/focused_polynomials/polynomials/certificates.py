"""
Cheap lower bounds on the focus parameter delta for two families of generators
that are focused by construction: vectors with positive coordinates, and positive
definite matrices under the trace scalar product.
Either bound never exceeds the exact minimum cosine from `compute_delta`.
"""
from typing import Sequence

import numpy as np

from ..exceptions import NotFocusedError, ValidationError


def positive_vectors_delta(generators: Sequence[Sequence[float]]) -> float:
    """
    If every coordinate of c_i is positive and min/max coordinate ratio of each c_i
    is at least r, every cosine is at least r^2.
    """
    array = np.atleast_2d(np.asarray(generators, dtype=float))
    if np.any(array <= 0):
        raise NotFocusedError("All coordinates need to be positive for this certificate.")
    ratios = array.min(axis=1) / array.max(axis=1)
    return float(ratios.min() ** 2)


def symmetric_matrix_to_vector(matrix: Sequence[Sequence[float]]) -> np.ndarray:
    """
    Coordinates of a symmetric k x k matrix in R^{k(k+1)/2}, such that the standard
    scalar product of two images equals trace(ab).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"Expected a square matrix, got shape {a.shape}.")
    if not np.allclose(a, a.T):
        raise ValidationError("Expected a symmetric matrix.")
    rows, cols = np.triu_indices(a.shape[0])
    return np.where(rows == cols, 1.0, np.sqrt(2.0)) * a[rows, cols]


def positive_definite_delta(matrices: Sequence[Sequence[Sequence[float]]]) -> float:
    """
    If every c_i is positive definite with smallest/largest eigenvalue ratio at least r,
    every cosine (in the trace scalar product) is at least r^2.
    """
    ratios = []
    for matrix in matrices:
        symmetric_matrix_to_vector(matrix)  # validates shape and symmetry
        eigenvalues = np.linalg.eigvalsh(np.asarray(matrix, dtype=float))
        if eigenvalues[0] <= 0:
            raise NotFocusedError("All matrices need to be positive definite for this certificate.")
        ratios.append(eigenvalues[0] / eigenvalues[-1])
    if not ratios:
        raise ValidationError("Expected at least one matrix.")
    return float(min(ratios) ** 2)
