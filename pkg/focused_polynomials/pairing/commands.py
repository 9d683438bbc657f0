from typing import Any, Optional

import click
from flask.cli import with_appcontext

from .. import focused_bp
from . import PartitionInstance
from ..exceptions import ValidationError
from ..integration.estimator import EstimatorConfig
from ..polynomials.core import pair_from_json
from ..utils import (
    Stopwatch,
    finish_run,
    load_json_file,
    output_options,
    randomized_options,
    require_seed,
    start_run_log,
)
from .complex_pairing import (
    count_vector_partitions,
    pairing_exact_permanent,
    pairing_randomized,
    vector_partition_demo,
)


def partition_instance_from_json(data: Any) -> PartitionInstance:
    """{"a_vectors": [[...], ...], "b": [...], "M": ...}"""
    if not isinstance(data, dict):
        raise ValidationError("A vector partition instance should be a JSON object.")
    missing = [key for key in ("a_vectors", "b", "M") if key not in data]
    if missing:
        raise ValidationError(f"Missing field(s): {', '.join(missing)}.")
    if not isinstance(data["a_vectors"], list) or not all(
        isinstance(a, list) for a in data["a_vectors"]
    ):
        raise ValidationError("Field a_vectors should be a list of vectors.")
    if not isinstance(data["b"], list):
        raise ValidationError("Field b should be a vector.")
    return PartitionInstance(
        a_vectors=tuple(tuple(a) for a in data["a_vectors"]), b=tuple(data["b"]), M=data["M"]
    )


@focused_bp.cli.command("pair")
@click.option(
    "--exact/--randomized",
    default=True,
    help="Compute exactly (permanents) or estimate via random subspaces.",
)
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="JSON file with a focused pair (a_generators, f_terms, b_generators, g_terms).",
)
@randomized_options
@output_options
@with_appcontext
def pair(
    exact: bool,
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
    Scalar product of two real polynomials under the complex Gaussian measure.
    """
    stopwatch = Stopwatch()
    focused_pair = pair_from_json(load_json_file(input_path))
    if exact:
        config = dict(exact=True, input=input_path)
        start_run_log("pair", config)
        payload = dict(value=pairing_exact_permanent(focused_pair), n=focused_pair.n, m=focused_pair.m)
        finish_run("pair", config, payload, stopwatch, with_timing=with_timing, output=output)
        return
    cfg = EstimatorConfig.from_settings(
        epsilon=epsilon,
        gamma=gamma,
        trials=trials,
        k_override=k_override,
        seed=require_seed(seed),
    )
    config = dict(exact=False, input=input_path, **vars(cfg))
    start_run_log("pair", config)
    report = pairing_randomized(focused_pair, cfg)
    finish_run(
        "pair",
        config,
        dict(report=report.to_dict(), n=focused_pair.n, m=focused_pair.m),
        stopwatch,
        seed=cfg.seed,
        with_timing=with_timing,
        output=output,
    )


@focused_bp.cli.command("vpartition")
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help='JSON file {"a_vectors": [...], "b": [...], "M": ...}.',
)
@click.option(
    "--check/--no-check",
    default=False,
    help="Also count the solutions by direct enumeration.",
)
@output_options
@with_appcontext
def vpartition(input_path: str, check: bool, output: Optional[str], with_timing: bool):
    """
    Count the solutions of k_1 a_1 + ... + k_N a_N = b with 0 <= k_i <= M, as a
    scalar product of two polynomials.
    """
    stopwatch = Stopwatch()
    instance = partition_instance_from_json(load_json_file(input_path))
    config = dict(input=input_path, check=check)
    start_run_log("vpartition", config)
    payload = dict(count=vector_partition_demo(instance))
    if check:
        payload["enumerated"] = count_vector_partitions(instance)
    finish_run("vpartition", config, payload, stopwatch, with_timing=with_timing, output=output)
