"""
Random subspaces of R^n, distributed according to the Haar measure on the Grassmannian.

Sampling procedure (fixed, so that a seed reproduces the same frame):

1. Uniforms come from numpy's counter-based Philox generator, keyed by
   SeedSequence(seed, spawn_key=(stream,)).
2. Standard normals are made from consecutive uniform pairs (u1, u2) by Box-Muller:
   r = sqrt(-2 ln(1 - u1)), z = (r cos(2 pi u2), r sin(2 pi u2)), in that order.
3. k Gaussian n-vectors (filled vector by vector) are orthonormalized by Gram-Schmidt
   with a second orthogonalization pass per vector. If a vector loses more than a
   factor 1e-10 of its norm, all k vectors are drawn again from the same stream.

The span of k independent Gaussian vectors is Haar-distributed on G_k(R^n).
"""
from typing import Optional, Sequence, Tuple, Union
from dataclasses import dataclass
import math

import numpy as np

from ..exceptions import ValidationError
from ..polynomials.core import compute_delta
from ..utils import get_logger, map_in_order

RANK_THRESHOLD = 1e-10
MAX_REDRAWS = 100


@dataclass(frozen=True)
class RngSeed:
    """A 64-bit seed and a stream id; independent trials use distinct streams."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"Seeds should be 64-bit non-negative integers, got {self.seed}.")
        if self.stream < 0:
            raise ValidationError(f"Stream ids should be non-negative, got {self.stream}.")


@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-dimensional subspace of R^n, given by an n x k frame with orthonormal columns."""

    n: int
    k: int
    frame: np.ndarray

    def __post_init__(self):
        frame = np.array(self.frame, dtype=float)
        if frame.shape != (self.n, self.k) or not 1 <= self.k <= self.n:
            raise ValidationError(
                f"A frame of a {self.k}-dimensional subspace of R^{self.n} should have shape ({self.n}, {self.k}), got {frame.shape}."
            )
        if np.max(np.abs(frame.T @ frame - np.eye(self.k))) > 1e-10:
            raise ValidationError("The frame columns are not orthonormal.")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        """R^n itself, with the standard basis as frame."""
        return cls(n=n, k=n, frame=np.eye(n))


class GaussianStream:
    """Standard normals by Box-Muller on Philox uniforms (see module docstring)."""

    def __init__(self, seed: RngSeed):
        sequence = np.random.SeedSequence(seed.seed, spawn_key=(seed.stream,))
        self._uniforms = np.random.Generator(np.random.Philox(sequence))

    def normal(self, size: int) -> np.ndarray:
        u = self._uniforms.random((2, (size + 1) // 2))
        radius = np.sqrt(-2.0 * np.log1p(-u[0]))
        angle = 2.0 * np.pi * u[1]
        return np.stack(
            [radius * np.cos(angle), radius * np.sin(angle)], axis=1
        ).ravel()[:size]


def gaussian_sample(seed: RngSeed, shape: Union[int, Tuple[int, ...]]) -> np.ndarray:
    shape = (shape,) if isinstance(shape, int) else tuple(shape)
    return GaussianStream(seed).normal(int(np.prod(shape))).reshape(shape)


def orthonormalize(columns: np.ndarray) -> Optional[np.ndarray]:
    """
    Modified Gram-Schmidt, followed by a second (re-orthogonalization) pass.
    Returns None on numerical rank deficiency.
    """
    n, k = columns.shape
    q = np.zeros((n, k))
    for j in range(k):
        v = columns[:, j].astype(float)
        original_norm = np.linalg.norm(v)
        for _ in range(2):
            for i in range(j):
                v = v - (q[:, i] @ v) * q[:, i]
        norm = np.linalg.norm(v)
        if original_norm == 0 or norm < RANK_THRESHOLD * original_norm:
            return None
        q[:, j] = v / norm
    return q


def sample_subspace(n: int, k: int, seed: RngSeed) -> Subspace:
    """Span of k independent standard Gaussian vectors in R^n."""
    if int(k) != k or int(n) != n or not 1 <= k <= n:
        raise ValidationError(f"Need 1 <= k <= n, got k={k} and n={n}.")
    stream = GaussianStream(seed)
    for _ in range(MAX_REDRAWS):
        frame = orthonormalize(stream.normal(n * k).reshape(k, n).T)
        if frame is not None:
            return Subspace(n=n, k=k, frame=frame)
        get_logger().debug(f"Rank-deficient draw for k={k}, n={n}; drawing again ...")
    raise ValidationError(f"Could not draw {k} independent vectors in R^{n}.")


def project(L: Subspace, x: Sequence[float]) -> Tuple[np.ndarray, float]:
    """Coordinates of the orthogonal projection x' of x in L's frame, and ||x'||."""
    x = np.asarray(x, dtype=float)
    if x.shape != (L.n,):
        raise ValidationError(f"Expected a vector of dimension {L.n}, got shape {x.shape}.")
    coords = L.frame.T @ x
    return coords, float(np.linalg.norm(coords))


def jl_failure_bound(k: int, eps: float) -> float:
    """Probability bound 4 exp(-eps^2 k / 4) for sqrt(n/k)||x'|| leaving [(1-eps)||x||, ||x||/(1-eps)]."""
    return min(1.0, 4.0 * math.exp(-(eps**2) * k / 4.0))


def jl_empirical_check(n: int, k: int, eps: float, trials: int, seed: int = 0) -> float:
    """
    Observed frequency with which sqrt(n/k)||x'|| falls outside
    [(1-eps)||x||, (1-eps)^{-1}||x||], for the fixed unit vector x = e_1
    and `trials` random k-dimensional subspaces (stream t for trial t).
    """
    _check_eps(eps)
    if trials < 1:
        raise ValidationError(f"Need at least one trial, got {trials}.")
    x = np.zeros(n)
    x[0] = 1.0

    def fails(trial: int) -> bool:
        _, norm = project(sample_subspace(n, k, RngSeed(seed, trial)), x)
        scaled = math.sqrt(n / k) * norm
        return not (1 - eps) <= scaled <= 1 / (1 - eps)

    failures = sum(map_in_order(fails, trials))
    get_logger().debug(f"{failures} of {trials} subspaces distorted e_1 by more than eps={eps}.")
    return failures / trials


def pairwise_gram_check(
    a_vecs: Sequence[Sequence[float]],
    b_vecs: Sequence[Sequence[float]],
    L: Subspace,
    eps: float,
) -> bool:
    """
    Whether (1-eps)<a_i', b_j'> <= (k/n)<a_i, b_j> <= (1-eps)^{-1}<a_i', b_j'> for all pairs,
    with projected inner products taken in frame coordinates.
    """
    _check_eps(eps)
    a = np.atleast_2d(np.asarray(a_vecs, dtype=float))
    b = np.atleast_2d(np.asarray(b_vecs, dtype=float))
    compute_delta(a, cross_with=b)
    projected = (a @ L.frame) @ (b @ L.frame).T
    scaled = (L.k / L.n) * (a @ b.T)
    return bool(
        np.all((1 - eps) * projected <= scaled)
        and np.all(scaled <= projected / (1 - eps))
    )


def _check_eps(eps: float):
    if not 0 < eps < 1:
        raise ValidationError(f"Epsilon should lie in (0, 1), got {eps}.")
