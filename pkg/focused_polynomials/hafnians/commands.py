from typing import Optional

import click
from flask.cli import with_appcontext

from .. import focused_bp
from . import MIN_EIGENVALUE, PSD
from ..integration.estimator import EstimatorConfig
from ..matchings.hafnian import hafnian as exact_hafnian
from ..utils import (
    Stopwatch,
    finish_run,
    load_json_file,
    output_options,
    parse_real,
    randomized_options,
    read_matrix,
    require_seed,
    start_run_log,
)
from .approximate import HafnianInstance, ShiftPolicy, approx_hafnian


def parse_shift(value: str) -> ShiftPolicy:
    if value in (PSD, MIN_EIGENVALUE):
        return value
    return parse_real(value, "--shift")


@focused_bp.cli.command("hafnian")
@click.option(
    "--approx/--exact",
    default=True,
    help="Estimate via random subspaces, or compute exactly (small orders only).",
)
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="JSON file with a symmetric matrix with positive off-diagonal entries.",
)
@click.option(
    "--shift",
    default=MIN_EIGENVALUE,
    show_default=True,
    help=f"Diagonal to use: '{PSD}' (keep it), '{MIN_EIGENVALUE}', or a number put on the diagonal.",
)
@randomized_options
@output_options
@with_appcontext
def hafnian_command(
    approx: bool,
    input_path: str,
    shift: str,
    epsilon: float,
    gamma: Optional[float],
    trials: Optional[int],
    k_override: Optional[int],
    seed: Optional[int],
    output: Optional[str],
    with_timing: bool,
):
    """
    Approximate the hafnian of a symmetric matrix with positive off-diagonal entries
    as a Gaussian integral, estimated on random subspaces.
    """
    stopwatch = Stopwatch()
    matrix = read_matrix(load_json_file(input_path))
    if not approx:
        config = dict(approx=False, input=input_path)
        start_run_log("hafnian", config)
        payload = dict(value=exact_hafnian(matrix), size=len(matrix))
        finish_run("hafnian", config, payload, stopwatch, with_timing=with_timing, output=output)
        return
    instance = HafnianInstance(matrix, shift_policy=parse_shift(shift))
    cfg = EstimatorConfig.from_settings(
        epsilon=epsilon,
        gamma=gamma,
        trials=trials,
        k_override=k_override,
        seed=require_seed(seed),
    )
    config = dict(approx=True, input=input_path, shift=shift, **vars(cfg))
    start_run_log("hafnian", config)
    report = approx_hafnian(instance, cfg)
    finish_run(
        "hafnian",
        config,
        dict(report=report.to_dict(), size=len(matrix)),
        stopwatch,
        seed=cfg.seed,
        with_timing=with_timing,
        output=output,
    )
