from typing import Optional

import click
from flask.cli import with_appcontext

from .. import focused_bp
from ..utils import (
    Stopwatch,
    finish_run,
    load_json_file,
    output_options,
    read_matrix,
    start_run_log,
)
from .hafnian import hafnian, hafnian_oracle
from .permanent import permanent, permanent_oracle


input_option = click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(dir_okay=False),
    help='JSON file with a square matrix (row-major array, or {"matrix": [...]}).',
)
oracle_option = click.option(
    "--oracle/--no-oracle",
    default=False,
    help="Use plain enumeration instead (small orders only, for cross-checking).",
)


@focused_bp.cli.command("haf")
@input_option
@oracle_option
@output_options
@with_appcontext
def haf(input_path: str, oracle: bool, output: Optional[str], with_timing: bool):
    """Exact hafnian of a symmetric matrix of even order."""
    stopwatch = Stopwatch()
    matrix = read_matrix(load_json_file(input_path))
    config = dict(input=input_path, oracle=oracle)
    start_run_log("haf", config)
    value = hafnian_oracle(matrix) if oracle else hafnian(matrix)
    finish_run("haf", config, dict(value=value, size=len(matrix)), stopwatch, with_timing=with_timing, output=output)


@focused_bp.cli.command("per")
@input_option
@oracle_option
@output_options
@with_appcontext
def per(input_path: str, oracle: bool, output: Optional[str], with_timing: bool):
    """Exact permanent of a square matrix."""
    stopwatch = Stopwatch()
    matrix = read_matrix(load_json_file(input_path))
    config = dict(input=input_path, oracle=oracle)
    start_run_log("per", config)
    value = permanent_oracle(matrix) if oracle else permanent(matrix)
    finish_run("per", config, dict(value=value, size=len(matrix)), stopwatch, with_timing=with_timing, output=output)
