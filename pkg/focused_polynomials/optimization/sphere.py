from typing import Optional, Tuple
from dataclasses import asdict, dataclass
import math

import numpy as np

from . import GRADIENT_TOLERANCE, MAX_STEP, RESTART_STREAM_OFFSET
from .. import DEFAULT_GAMMA, DEFAULT_HAFNIAN_CAP
from ..exceptions import CapExceededError, ValidationError
from ..integration.estimator import EstimatorConfig, choose_k
from ..integration.gaussian import integrate_gaussian, sphere_from_gaussian
from ..integration.subspace import RngSeed, Subspace, gaussian_sample, sample_subspace
from ..polynomials import FocusedPolynomial
from ..polynomials.core import compute_delta, power, restrict
from ..utils import get_logger, get_setting, map_in_order


@dataclass(frozen=True)
class OptConfig:
    epsilon: float = 0.5
    gamma: float = DEFAULT_GAMMA
    seed: int = 0
    restarts: int = 32
    max_iters: int = 500
    step_tolerance: float = 1e-10
    k_override: Optional[int] = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError(f"Need at least one restart, got {self.restarts}.")
        if self.max_iters < 1:
            raise ValidationError(f"Need at least one iteration, got {self.max_iters}.")
        if self.step_tolerance <= 0:
            raise ValidationError(f"The step tolerance should be positive, got {self.step_tolerance}.")
        self.estimator_config()  # validates epsilon, gamma, k_override and seed

    @classmethod
    def from_settings(cls, **kwargs) -> "OptConfig":
        if kwargs.get("gamma") is None:
            kwargs["gamma"] = get_setting("FOCUSED_GAMMA", DEFAULT_GAMMA)
        return cls(**kwargs)

    def estimator_config(self) -> EstimatorConfig:
        return EstimatorConfig(
            epsilon=self.epsilon,
            gamma=self.gamma,
            trials=1,
            k_override=self.k_override,
            seed=self.seed,
        )


@dataclass(frozen=True, eq=False)
class OptReport:
    """
    max_estimate = (n/k)^{m/2} * best value found on the unit sphere of L.
    argmax_ambient is the best point of L's sphere written in R^n; it comes with
    no approximation guarantee of its own.
    """

    max_estimate: float
    restricted_max: float
    argmax_ambient: np.ndarray
    k_used: int
    delta_used: float
    scaling: float
    per_restart: Tuple[float, ...]
    converged: bool
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def value_and_gradient(poly: FocusedPolynomial, y: np.ndarray) -> Tuple[float, np.ndarray]:
    """f(y) and its Euclidean gradient, by the product rule on every term."""
    forms = poly.generators @ y
    values = []
    gradient = np.zeros(poly.n)
    for term in poly.terms:
        indices = list(term.indices)
        factors = forms[indices]
        before = np.concatenate(([1.0], np.cumprod(factors[:-1])))
        after = np.concatenate((np.cumprod(factors[:0:-1])[::-1], [1.0]))
        values.append(term.weight * before[-1] * factors[-1])
        gradient += term.weight * (before * after) @ poly.generators[indices]
    return math.fsum(values), gradient


def ascend_on_sphere(
    poly: FocusedPolynomial, start: np.ndarray, cfg: OptConfig
) -> Tuple[float, np.ndarray, bool]:
    """
    Projected gradient ascent on the unit sphere: step along the tangent (Riemannian)
    gradient, renormalize, halve the step until the value increases.
    Stops when the norm of the tangent gradient drops below GRADIENT_TOLERANCE
    or the step drops below the step tolerance.
    """
    y = start / np.linalg.norm(start)
    value, gradient = value_and_gradient(poly, y)
    step = MAX_STEP
    for _ in range(cfg.max_iters):
        tangent = gradient - (gradient @ y) * y
        norm = float(np.linalg.norm(tangent))
        if norm < GRADIENT_TOLERANCE:
            return value, y, True
        direction = tangent / norm
        while True:
            candidate = y + step * direction
            candidate /= np.linalg.norm(candidate)
            candidate_value, candidate_gradient = value_and_gradient(poly, candidate)
            if candidate_value > value:
                break
            step /= 2
            if step < cfg.step_tolerance:
                return value, y, True
        y, value, gradient = candidate, candidate_value, candidate_gradient
        step = min(MAX_STEP, 2 * step)
    return value, y, False


def _random_subspace(poly: FocusedPolynomial, cfg: OptConfig) -> Tuple[Subspace, float]:
    certificate = compute_delta(poly.generators)
    k = choose_k(poly.n, poly.number_of_generators, certificate.delta, cfg.estimator_config())
    return sample_subspace(poly.n, k, RngSeed(cfg.seed, 0)), certificate.delta


def _start(restricted: FocusedPolynomial, restart: int, cfg: OptConfig) -> np.ndarray:
    """
    Restart 0 starts at the normalized sum of the unit generators, the others at
    uniform points of the sphere. Odd-degree starts are flipped to a non-negative value.
    """
    if restart == 0:
        generators = restricted.generators
        start = (generators / np.linalg.norm(generators, axis=1)[:, None]).sum(axis=0)
    else:
        start = gaussian_sample(RngSeed(cfg.seed, RESTART_STREAM_OFFSET + restart), restricted.n)
    if np.linalg.norm(start) == 0:
        start = np.eye(restricted.n)[0]
    start = start / np.linalg.norm(start)
    if restricted.m % 2 and value_and_gradient(restricted, start)[0] < 0:
        start = -start
    return start


def maximize_on_sphere(poly: FocusedPolynomial, cfg: OptConfig) -> OptReport:
    """
    Approximate the maximum of f on S^{n-1} by (n/k)^{m/2} times the maximum of f on
    the unit sphere of a random k-dimensional subspace, found by multi-start local search.
    """
    log = get_logger()
    L, delta = _random_subspace(poly, cfg)
    restricted = restrict(poly, L)
    log.info(f"Maximizing over the unit sphere of a random {L.k}-dimensional subspace of R^{poly.n} ...")

    outcomes = map_in_order(
        lambda restart: ascend_on_sphere(restricted, _start(restricted, restart, cfg), cfg),
        cfg.restarts,
    )
    values = tuple(value for value, _, _ in outcomes)
    best = int(np.argmax(values))
    converged = any(done for _, _, done in outcomes)
    if not converged:
        log.warning(
            f"No restart converged within {cfg.max_iters} iterations; reporting the best value found."
        )
    scaling = (poly.n / L.k) ** (poly.m / 2)
    log.debug("Values per restart: \n%s" % (values,))
    return OptReport(
        max_estimate=scaling * values[best],
        restricted_max=values[best],
        argmax_ambient=L.frame @ outcomes[best][1],
        k_used=L.k,
        delta_used=delta,
        scaling=scaling,
        per_restart=values,
        converged=converged,
        seed=cfg.seed,
    )


def max_via_norms(poly: FocusedPolynomial, p: int, cfg: OptConfig) -> float:
    """
    (n/k)^{m/2} (int_{S^{k-1} in L} f^{2p})^{1/2p}: an L^{2p}-norm proxy for the maximum,
    on the same random subspace as `maximize_on_sphere` with the same configuration.
    It never exceeds the maximum and increases towards it with p.
    """
    if int(p) != p or p < 1:
        raise ValidationError(f"p should be a positive integer, got {p}.")
    cap = get_setting("FOCUSED_HAFNIAN_CAP", DEFAULT_HAFNIAN_CAP)
    if 2 * p * poly.m > cap:
        raise CapExceededError(
            f"f^{2 * p} has degree {2 * p * poly.m}, beyond the hafnian cap of {cap}."
        )
    L, _ = _random_subspace(poly, cfg)
    powered = power(restrict(poly, L), 2 * p)
    sphere_integral = sphere_from_gaussian(integrate_gaussian(powered), L.k, powered.m)
    scaling = (poly.n / L.k) ** (poly.m / 2)
    return scaling * max(sphere_integral, 0.0) ** (1 / (2 * p))
