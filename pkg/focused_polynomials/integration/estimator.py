from typing import Any, Callable, Dict, Optional, Tuple
from dataclasses import asdict, dataclass, field, replace
import math

from .. import DEFAULT_GAMMA, DEFAULT_TRIALS
from ..exceptions import ValidationError
from ..polynomials import FocusedPolynomial
from ..polynomials.core import compute_delta, restrict
from ..utils import get_logger, get_setting, map_in_order, median_of
from .gaussian import integrate_gaussian, sphere_factor
from .subspace import RngSeed, Subspace, sample_subspace


@dataclass(frozen=True)
class EstimatorConfig:
    epsilon: float = 0.5
    gamma: float = DEFAULT_GAMMA
    trials: int = DEFAULT_TRIALS
    k_override: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValidationError(f"Epsilon should lie in (0, 1), got {self.epsilon}.")
        if self.gamma <= 0:
            raise ValidationError(f"Gamma should be positive, got {self.gamma}.")
        if int(self.trials) != self.trials or self.trials < 1 or self.trials % 2 == 0:
            raise ValidationError(
                f"The number of trials should be a positive odd integer, got {self.trials}."
            )
        if self.k_override is not None and self.k_override < 1:
            raise ValidationError(f"k should be a positive integer, got {self.k_override}.")
        RngSeed(self.seed)

    @classmethod
    def from_settings(cls, **kwargs) -> "EstimatorConfig":
        """Defaults for gamma and trials come from FOCUSED_GAMMA and FOCUSED_TRIALS."""
        if kwargs.get("gamma") is None:
            kwargs["gamma"] = get_setting("FOCUSED_GAMMA", DEFAULT_GAMMA)
        if kwargs.get("trials") is None:
            kwargs["trials"] = get_setting("FOCUSED_TRIALS", DEFAULT_TRIALS)
        return cls(**kwargs)


@dataclass(frozen=True)
class EstimateReport:
    """The estimate is the median of the (scaled) per-trial values, in trial order."""

    estimate: float
    per_trial: Tuple[float, ...]
    k_used: int
    delta_used: float
    scaling: float
    seed: int
    k_clamped: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def k_bound(number_of_generators: int, delta: float, cfg: EstimatorConfig) -> int:
    """ceil(gamma eps^-2 delta^-2 ln(N + 2))"""
    if not 0 < delta <= 1:
        raise ValidationError(f"Delta should lie in (0, 1], got {delta}.")
    return math.ceil(
        cfg.gamma * cfg.epsilon**-2 * delta**-2 * math.log(number_of_generators + 2)
    )


def choose_k(n: int, number_of_generators: int, delta: float, cfg: EstimatorConfig) -> int:
    """The subspace dimension: the bound clamped to n, unless k_override is set."""
    bound = k_bound(number_of_generators, delta, cfg)
    if cfg.k_override is not None:
        if cfg.k_override > n:
            raise ValidationError(f"Cannot use k={cfg.k_override} in R^{n}.")
        return cfg.k_override
    return min(n, bound)


def run_randomized(
    n: int,
    number_of_generators: int,
    delta: float,
    scaling_exponent: float,
    exact_on: Callable[[Subspace], float],
    cfg: EstimatorConfig,
) -> EstimateReport:
    """
    For each trial t, sample a k-dimensional subspace L_t (stream t), compute the exact
    quantity on L_t and scale it by (n/k)^scaling_exponent; report the median.
    """
    log = get_logger()
    k = choose_k(n, number_of_generators, delta, cfg)
    k_clamped = cfg.k_override is None and k < k_bound(number_of_generators, delta, cfg)
    if k_clamped:
        log.info(f"Subspace dimension bound exceeds n={n}; integrating over all of R^{n}.")
    scaling = (n / k) ** scaling_exponent
    log.info(f"Running {cfg.trials} trials on random {k}-dimensional subspaces of R^{n} ...")

    def trial_value(trial: int) -> float:
        L = sample_subspace(n, k, RngSeed(cfg.seed, trial))
        return scaling * exact_on(L)

    per_trial = tuple(map_in_order(trial_value, cfg.trials))
    log.debug("Per-trial values: \n%s" % (per_trial,))
    return EstimateReport(
        estimate=median_of(per_trial),
        per_trial=per_trial,
        k_used=k,
        delta_used=delta,
        scaling=scaling,
        seed=cfg.seed,
        k_clamped=k_clamped,
    )


def estimate_gaussian_integral(
    poly: FocusedPolynomial, cfg: EstimatorConfig
) -> EstimateReport:
    """
    Median over trials of (n/k)^{m/2} times the exact Gaussian integral of f restricted
    to a random k-dimensional subspace.
    """
    certificate = compute_delta(poly.generators)
    return run_randomized(
        n=poly.n,
        number_of_generators=poly.number_of_generators,
        delta=certificate.delta,
        scaling_exponent=poly.m / 2,
        exact_on=lambda L: integrate_gaussian(restrict(poly, L)),
        cfg=cfg,
    )


def estimate_sphere_integral(
    poly: FocusedPolynomial, cfg: EstimatorConfig
) -> EstimateReport:
    """The Gaussian estimate, converted to the sphere S^{n-1}; odd degrees give 0 right away."""
    certificate = compute_delta(poly.generators)
    if poly.m % 2:
        return EstimateReport(
            estimate=0.0,
            per_trial=(),
            k_used=0,
            delta_used=certificate.delta,
            scaling=1.0,
            seed=cfg.seed,
            details=dict(measure="sphere"),
        )
    report = estimate_gaussian_integral(poly, cfg)
    factor = sphere_factor(poly.n, poly.m)
    return replace(
        report,
        estimate=report.estimate * factor,
        per_trial=tuple(value * factor for value in report.per_trial),
        details=dict(measure="sphere", sphere_factor=factor),
    )
