from typing import Optional, Tuple


class ValidationError(ValueError):
    """Input is structurally invalid (shapes, indices, JSON, PSD-ness)."""


class CapExceededError(ValueError):
    """A configured size cap was exceeded; the instance is too large."""


class NotFocusedError(ValueError):
    """
    The vectors at hand do not have pairwise positive cosines,
    so the subspace methods do not apply.
    """

    def __init__(
        self,
        message: str,
        min_cosine: Optional[float] = None,
        witness: Optional[Tuple[int, int]] = None,
    ):
        super().__init__(message)
        self.min_cosine = min_cosine
        self.witness = witness


class DegenerateRestrictionError(NotFocusedError):
    """A generator projects to (numerically) zero on the chosen subspace."""
