from typing import Optional

import click
from flask.cli import with_appcontext

from .. import focused_bp
from . import measures
from ..polynomials.core import polynomial_from_json
from ..utils import (
    Stopwatch,
    finish_run,
    load_json_file,
    output_options,
    randomized_options,
    require_seed,
    start_run_log,
)
from .benchmark import cmd_benchmark_needle
from .estimator import (
    EstimatorConfig,
    estimate_gaussian_integral,
    estimate_sphere_integral,
)
from .gaussian import integrate_gaussian, integrate_sphere
from .subspace import RngSeed, sample_subspace


@focused_bp.cli.command("integrate")
@click.option(
    "--exact/--randomized",
    default=True,
    help="Integrate exactly (Wick formula) or estimate via random subspaces.",
)
@click.option(
    "--measure",
    type=click.Choice([name for name, _ in measures]),
    default="gaussian",
    show_default=True,
    help="Integrate against the Gaussian measure on R^n or the uniform measure on the sphere.",
)
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="JSON file with a focused polynomial.",
)
@randomized_options
@output_options
@with_appcontext
def integrate(
    exact: bool,
    measure: str,
    input_path: str,
    epsilon: float,
    gamma: Optional[float],
    trials: Optional[int],
    k_override: Optional[int],
    seed: Optional[int],
    output: Optional[str],
    with_timing: bool,
):
    """
    Integrate a focused polynomial over R^n (Gaussian measure) or the unit sphere,
    exactly or by restriction onto random subspaces.
    """
    stopwatch = Stopwatch()
    poly = polynomial_from_json(load_json_file(input_path))
    if exact:
        config = dict(exact=True, measure=measure, input=input_path)
        start_run_log("integrate", config)
        value = integrate_gaussian(poly) if measure == "gaussian" else integrate_sphere(poly)
        payload = dict(value=value, n=poly.n, m=poly.m)
        finish_run("integrate", config, payload, stopwatch, with_timing=with_timing, output=output)
        return
    cfg = EstimatorConfig.from_settings(
        epsilon=epsilon,
        gamma=gamma,
        trials=trials,
        k_override=k_override,
        seed=require_seed(seed),
    )
    config = dict(exact=False, measure=measure, input=input_path, **vars(cfg))
    start_run_log("integrate", config)
    if measure == "gaussian":
        report = estimate_gaussian_integral(poly, cfg)
    else:
        report = estimate_sphere_integral(poly, cfg)
    finish_run(
        "integrate",
        config,
        dict(report=report.to_dict(), n=poly.n, m=poly.m),
        stopwatch,
        seed=cfg.seed,
        with_timing=with_timing,
        output=output,
    )


@focused_bp.cli.command("sample-subspace")
@click.option("--n", type=int, required=True, help="Ambient dimension.")
@click.option("--k", type=int, required=True, help="Subspace dimension (1 <= k <= n).")
@click.option("--seed", type=int, required=True, help="64-bit seed.")
@click.option("--stream", type=int, default=0, show_default=True, help="Stream id.")
@output_options
@with_appcontext
def sample_subspace_command(
    n: int, k: int, seed: int, stream: int, output: Optional[str], with_timing: bool
):
    """
    Print the orthonormal frame (n x k, row-major) of a random k-dimensional subspace of R^n.
    """
    stopwatch = Stopwatch()
    config = dict(n=n, k=k, seed=seed, stream=stream)
    start_run_log("sample-subspace", config)
    L = sample_subspace(n, k, RngSeed(seed, stream))
    finish_run(
        "sample-subspace",
        config,
        dict(n=L.n, k=L.k, frame=L.frame),
        stopwatch,
        seed=seed,
        with_timing=with_timing,
        output=output,
    )


@focused_bp.cli.command("benchmark")
@click.option("--n", type=int, required=True, help="Ambient dimension.")
@click.option("--k-power", type=int, required=True, help="Integrate xi_1^(2 k_power).")
@click.option("--mc-samples", type=int, default=100_000, show_default=True, help="Monte Carlo sample size.")
@randomized_options
@output_options
@with_appcontext
def benchmark(
    n: int,
    k_power: int,
    mc_samples: int,
    epsilon: float,
    gamma: Optional[float],
    trials: Optional[int],
    k_override: Optional[int],
    seed: Optional[int],
    output: Optional[str],
    with_timing: bool,
):
    """
    Compare plain Monte Carlo with the subspace estimator on the needle xi_1^(2 k_power)
    over the unit sphere, against the closed form.
    """
    stopwatch = Stopwatch()
    cfg = EstimatorConfig.from_settings(
        epsilon=epsilon,
        gamma=gamma,
        trials=trials,
        k_override=k_override,
        seed=require_seed(seed),
    )
    config = dict(n=n, k_power=k_power, mc_samples=mc_samples, **vars(cfg))
    start_run_log("benchmark", config)
    table = cmd_benchmark_needle(n, k_power, mc_samples, cfg)
    rows = table.reset_index().astype(object).where(table.reset_index().notna(), None)
    finish_run(
        "benchmark",
        config,
        dict(table=rows.to_dict(orient="records")),
        stopwatch,
        seed=cfg.seed,
        with_timing=with_timing,
        output=output,
    )
