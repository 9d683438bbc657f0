from typing import Any, Optional
from itertools import permutations
import math

import numpy as np

from . import PERMANENT_ORACLE_CAP, as_square_matrix
from .. import DEFAULT_PERMANENT_CAP
from ..exceptions import CapExceededError
from ..utils import get_setting


def permanent(matrix: Any, cap: Optional[int] = None) -> float:
    """
    Permanent by Ryser's inclusion-exclusion formula

        per A = (-1)^m sum_{S subset of columns} (-1)^{|S|} prod_i sum_{j in S} a_ij,

    visiting the column subsets in Gray code order, so each step adds or removes one
    column from the running row sums. The alternating terms are summed with math.fsum.
    """
    a = _checked(matrix, cap or get_setting("FOCUSED_PERMANENT_CAP", DEFAULT_PERMANENT_CAP))
    size = a.shape[0]
    if size == 0:
        return 1.0
    row_sums = np.zeros(size)
    terms = []
    previous = 0
    for step in range(1, 1 << size):
        gray = step ^ (step >> 1)
        flipped = gray ^ previous
        column = flipped.bit_length() - 1
        if gray & flipped:
            row_sums += a[:, column]
        else:
            row_sums -= a[:, column]
        previous = gray
        sign = -1.0 if (size - bin(gray).count("1")) % 2 else 1.0
        terms.append(sign * float(np.prod(row_sums)))
    return math.fsum(terms)


def permanent_oracle(matrix: Any) -> float:
    """Permanent as the plain sum over all m! permutations."""
    a = _checked(matrix, PERMANENT_ORACLE_CAP).tolist()
    return math.fsum(
        math.prod(a[i][sigma[i]] for i in range(len(a)))
        for sigma in permutations(range(len(a)))
    )


def _checked(matrix: Any, cap: int) -> np.ndarray:
    a = as_square_matrix(matrix)
    if a.shape[0] > cap:
        raise CapExceededError(
            f"Matrix order {a.shape[0]} exceeds the permanent cap of {cap}."
        )
    return a
