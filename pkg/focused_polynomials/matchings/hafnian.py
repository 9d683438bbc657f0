from typing import Any, Iterator, List, Optional, Tuple
from functools import lru_cache
import math

from . import HAFNIAN_ORACLE_CAP, as_sym_matrix
from .. import DEFAULT_HAFNIAN_CAP
from ..exceptions import CapExceededError, ValidationError
from ..utils import get_setting


def hafnian(matrix: Any, cap: Optional[int] = None) -> float:
    """
    Sum over all perfect matchings of {1, ..., m} of the product of matched entries.

    Computed by expanding along the lowest unmatched index, memoized on the set of
    indices still to be matched (a bit mask). Sums at every level are compensated
    (math.fsum) and taken in a fixed order. Diagonal entries never enter.
    The hafnian of the empty matrix is 1.
    """
    entries = _checked_entries(matrix, cap or get_setting("FOCUSED_HAFNIAN_CAP", DEFAULT_HAFNIAN_CAP))
    size = len(entries)

    @lru_cache(maxsize=None)
    def matchings_of(mask: int) -> float:
        if mask == 0:
            return 1.0
        lowest = mask & -mask
        i = lowest.bit_length() - 1
        rest = mask ^ lowest
        parts = []
        candidates = rest
        while candidates:
            bit = candidates & -candidates
            candidates ^= bit
            entry = entries[i][bit.bit_length() - 1]
            if entry != 0.0:
                parts.append(entry * matchings_of(rest ^ bit))
        return math.fsum(parts)

    return matchings_of((1 << size) - 1)


def hafnian_oracle(matrix: Any) -> float:
    """Hafnian by listing every pair partition; only meant to cross-check `hafnian`."""
    entries = _checked_entries(matrix, HAFNIAN_ORACLE_CAP)
    return math.fsum(
        math.prod(entries[i][j] for i, j in pairing)
        for pairing in all_pairings(list(range(len(entries))))
    )


def all_pairings(items: List[int]) -> Iterator[List[Tuple[int, int]]]:
    """
    Yields all partitions of the given items into unordered pairs.
    """
    if len(items) == 0:
        yield []
        return
    first, others = items[0], items[1:]
    for position, partner in enumerate(others):
        for pairing in all_pairings(others[:position] + others[position + 1 :]):
            yield [(first, partner)] + pairing


def _checked_entries(matrix: Any, cap: int) -> List[List[float]]:
    sym = as_sym_matrix(matrix)
    if sym.size % 2:
        raise ValidationError(f"A hafnian needs a matrix of even order, got {sym.size}.")
    if sym.size > cap:
        raise CapExceededError(
            f"Matrix order {sym.size} exceeds the hafnian cap of {cap}."
        )
    return sym.entries.tolist()
