from typing import Sequence, Tuple
from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError


@dataclass(frozen=True)
class PartitionInstance:
    """
    Count the ways of writing b = k_1 a_1 + ... + k_N a_N with integers 0 <= k_i <= M.
    All vectors have non-negative integer entries and the same dimension.
    """

    a_vectors: Tuple[Tuple[int, ...], ...]
    b: Tuple[int, ...]
    M: int

    def __post_init__(self):
        b = _as_counts(self.b, "b")
        a_vectors = tuple(_as_counts(a, f"a_{i + 1}") for i, a in enumerate(self.a_vectors))
        if not a_vectors:
            raise ValidationError("Need at least one vector a_i.")
        if any(len(a) != len(b) for a in a_vectors):
            raise ValidationError(f"All vectors should have dimension {len(b)}.")
        if not isinstance(self.M, (int, np.integer)) or isinstance(self.M, bool) or self.M < 1:
            raise ValidationError(f"M should be a positive integer, got {self.M}.")
        object.__setattr__(self, "a_vectors", a_vectors)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "M", int(self.M))

    @property
    def n(self) -> int:
        return len(self.b)


def _as_counts(vector: Sequence[int], what: str) -> Tuple[int, ...]:
    if not len(vector) or any(
        not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0
        for v in vector
    ):
        raise ValidationError(f"{what} should be a non-empty vector of non-negative integers.")
    return tuple(int(v) for v in vector)
