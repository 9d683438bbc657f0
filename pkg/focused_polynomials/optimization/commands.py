from typing import Optional

import click
from flask.cli import with_appcontext

from .. import focused_bp
from ..polynomials.core import polynomial_from_json
from ..utils import (
    Stopwatch,
    finish_run,
    load_json_file,
    output_options,
    require_seed,
    start_run_log,
)
from .sphere import OptConfig, max_via_norms, maximize_on_sphere


@focused_bp.cli.command("maximize")
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="JSON file with a focused polynomial.",
)
@click.option("--eps", "epsilon", type=float, default=0.5, show_default=True, help="Approximation parameter epsilon in (0, 1).")
@click.option("--gamma", type=float, default=None, help="Constant gamma of the subspace dimension bound (default: setting FOCUSED_GAMMA).")
@click.option("--k", "k_override", type=int, default=None, help="Use this subspace dimension instead of the bound.")
@click.option("--seed", type=int, default=None, help="Seed of the random subspace and the restarts (required).")
@click.option("--restarts", type=int, default=32, show_default=True, help="Number of local searches.")
@click.option("--max-iters", type=int, default=500, show_default=True, help="Iterations per local search.")
@click.option(
    "--norm-power",
    "p",
    type=int,
    default=None,
    help="Also report the L^2p-norm proxy of the maximum for this p.",
)
@output_options
@with_appcontext
def maximize(
    input_path: str,
    epsilon: float,
    gamma: Optional[float],
    k_override: Optional[int],
    seed: Optional[int],
    restarts: int,
    max_iters: int,
    p: Optional[int],
    output: Optional[str],
    with_timing: bool,
):
    """
    Approximate the maximum of a focused polynomial on the unit sphere by its scaled
    maximum on the sphere of a random low-dimensional subspace.
    """
    stopwatch = Stopwatch()
    poly = polynomial_from_json(load_json_file(input_path))
    cfg = OptConfig.from_settings(
        epsilon=epsilon,
        gamma=gamma,
        seed=require_seed(seed),
        restarts=restarts,
        max_iters=max_iters,
        k_override=k_override,
    )
    config = dict(input=input_path, norm_power=p, **vars(cfg))
    log = start_run_log("maximize", config)
    report = maximize_on_sphere(poly, cfg)
    payload = dict(report=report.to_dict(), n=poly.n, m=poly.m)
    if p is not None:
        log.info(f"Computing the L^{2 * p} norm proxy ...")
        payload["norm_estimate"] = max_via_norms(poly, p, cfg)
    finish_run(
        "maximize",
        config,
        payload,
        stopwatch,
        seed=cfg.seed,
        with_timing=with_timing,
        output=output,
    )
