"""
Plain Monte Carlo versus the subspace estimator on the "needle" f(x) = xi_1^{2k},
whose sphere integral is known in closed form but concentrated on an exponentially
small part of the sphere.
"""
import math

import numpy as np
import pandas as pd

from . import MONTE_CARLO_STREAM
from ..exceptions import ValidationError
from ..polynomials import FocusedPolynomial
from ..utils import get_logger
from .estimator import EstimatorConfig, estimate_sphere_integral
from .gaussian import needle_sphere_integral
from .subspace import GaussianStream, RngSeed

MONTE_CARLO_CHUNK = 100_000


def monte_carlo_needle(n: int, k_power: int, samples: int, seed: int) -> pd.Series:
    """Sample mean (and its standard error) of xi_1^{2k} over uniform points on S^{n-1}."""
    if samples < 2:
        raise ValidationError(f"Monte Carlo needs at least 2 samples, got {samples}.")
    stream = GaussianStream(RngSeed(seed, MONTE_CARLO_STREAM))
    values = []
    remaining = samples
    while remaining:
        size = min(remaining, MONTE_CARLO_CHUNK)
        points = stream.normal(size * n).reshape(size, n)
        first = points[:, 0] / np.linalg.norm(points, axis=1)
        values.append(first ** (2 * k_power))
        remaining -= size
    values = pd.Series(np.concatenate(values))
    return pd.Series(dict(estimate=values.mean(), standard_error=values.sem()))


def cmd_benchmark_needle(
    n: int, k_power: int, mc_samples: int, cfg: EstimatorConfig
) -> pd.DataFrame:
    """
    Table with one row per method (exact closed form, Monte Carlo, subspace estimator),
    the estimate and its relative error.
    """
    if n < 1 or k_power < 0:
        raise ValidationError(f"Need n >= 1 and k_power >= 0, got n={n}, k_power={k_power}.")
    log = get_logger()
    exact = needle_sphere_integral(n, k_power)

    log.info(f"Monte Carlo with {mc_samples} points on S^{n - 1} ...")
    monte_carlo = monte_carlo_needle(n, k_power, mc_samples, cfg.seed)

    if k_power == 0:
        subspace_estimate, k_used = 1.0, 0
    else:
        log.info("Subspace estimator ...")
        needle = FocusedPolynomial(
            n=n,
            m=2 * k_power,
            generators=[np.eye(n)[0]],
            terms=[((0,) * (2 * k_power), 1.0)],
        )
        report = estimate_sphere_integral(needle, cfg)
        subspace_estimate, k_used = report.estimate, report.k_used

    table = pd.DataFrame(
        [
            dict(method="exact", estimate=exact, standard_error=0.0, k_used=n),
            dict(
                method="monte_carlo",
                estimate=monte_carlo["estimate"],
                standard_error=monte_carlo["standard_error"],
                k_used=n,
            ),
            dict(method="subspace", estimate=subspace_estimate, standard_error=math.nan, k_used=k_used),
        ]
    ).set_index("method")
    table["relative_error"] = (table["estimate"] - exact).abs() / exact
    log.debug("Benchmark: \n%s" % table)
    return table
