from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar, Union
from concurrent.futures import ThreadPoolExecutor
from logging import Logger
import contextvars
import logging
import json
import time

from flask import current_app, has_app_context
import numpy as np
import click

from . import __version__, DEFAULT_THREADS
from .exceptions import ValidationError

T = TypeVar("T")

SCHEMA_VERSION = 1


def get_setting(key: str, default: T) -> T:
    """
    Read a FOCUSED_* setting from the app config, if an app context is active.
    Outside of an app (plain library use) the default applies.
    """
    if has_app_context():
        value = current_app.config.get(key, default)
        if value is None:
            return default
        return type(default)(value) if default is not None else value
    return default


def get_logger() -> Logger:
    if has_app_context():
        return current_app.logger
    return logging.getLogger("focused_polynomials")


def map_in_order(func: Callable[[int], T], count: int) -> List[T]:
    """
    Evaluate func(0), ..., func(count - 1), possibly on several threads
    (setting FOCUSED_THREADS). Results are ordered by index, whatever the completion order.
    """
    threads = get_setting("FOCUSED_THREADS", DEFAULT_THREADS)
    if threads <= 1 or count <= 1:
        return [func(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        # each task gets its own copy of the context, so the app context travels along
        futures = [
            executor.submit(contextvars.copy_context().run, func, i)
            for i in range(count)
        ]
        return [future.result() for future in futures]


def parse_real(value: Union[str, float, int], what: str = "value") -> float:
    """Reals may be given as JSON numbers or as decimal strings."""
    if isinstance(value, bool):
        raise ValidationError(f"Expected a real number for {what}, got {value!r}.")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"Expected a real number for {what}, got {value!r}.")


def parse_matrix(rows: Any, what: str = "matrix") -> np.ndarray:
    """Parse a row-major JSON array into a square float matrix."""
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ValidationError(f"The {what} should be a list of rows.")
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValidationError(f"The {what} should be square, got {size} rows of unequal length.")
    return np.array(
        [[parse_real(entry, what) for entry in row] for row in rows], dtype=float
    ).reshape(size, size)


def read_matrix(document: Any) -> np.ndarray:
    """A matrix file holds either the row-major array itself or {"matrix": [...]}."""
    if isinstance(document, dict):
        if "matrix" not in document:
            raise ValidationError('Expected a "matrix" key.')
        document = document["matrix"]
    return parse_matrix(document)


def load_json_file(path: str) -> Any:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"Malformed JSON in {path}: {e.msg} (line {e.lineno}, column {e.colno}, position {e.pos})"
        )
    except OSError as e:
        raise ValidationError(f"Cannot read {path}: {e}")


def to_jsonable(value: Any) -> Any:
    """Turn numpy scalars and arrays (also nested) into plain Python values."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def make_manifest(
    command: str,
    config: Dict[str, Any],
    seed: Optional[int] = None,
    duration: Optional[float] = None,
) -> Dict[str, Any]:
    manifest: Dict[str, Any] = dict(
        command=command,
        config=config,
        seed=seed,
        version=__version__,
    )
    if duration is not None:
        manifest["duration_seconds"] = duration
    return manifest


def emit_document(
    payload: Dict[str, Any],
    manifest: Dict[str, Any],
    output: Optional[str] = None,
):
    """
    Write a result document (schema-versioned, manifest embedded) to stdout or to a file.
    Floats keep their shortest round-trip representation.
    """
    document = dict(schema=SCHEMA_VERSION, manifest=manifest)
    document.update(payload)
    text = json.dumps(to_jsonable(document), sort_keys=True, allow_nan=False)
    if output is None:
        click.echo(text)
    else:
        with open(output, "w") as f:
            f.write(text + "\n")
        get_logger().info(f"Wrote {output}.")


def start_run_log(command: str, config: Dict[str, Any]) -> Logger:
    log = get_logger()
    log.info(f"Running {command} with {config} ...")
    return log


class Stopwatch:
    def __init__(self):
        self.started = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def median_of(values: Sequence[float]) -> float:
    """Median of an odd number of values (the middle one, no interpolation)."""
    if len(values) == 0:
        raise ValidationError("Cannot take the median of no values.")
    return float(np.median(np.asarray(values, dtype=float)))


def finish_run(
    command: str,
    config: Dict[str, Any],
    payload: Dict[str, Any],
    stopwatch: Stopwatch,
    seed: Optional[int] = None,
    with_timing: bool = False,
    output: Optional[str] = None,
):
    duration = stopwatch.elapsed()
    get_logger().info(f"Finished {command} in {duration:.3f} seconds.")
    manifest = make_manifest(
        command, config, seed=seed, duration=duration if with_timing else None
    )
    emit_document(payload, manifest, output)


def require_seed(seed: Optional[int]) -> int:
    """Randomized commands never fall back to wall-clock seeding."""
    if seed is None:
        raise ValidationError("Randomized commands need an explicit --seed.")
    return seed


def randomized_options(command: Callable) -> Callable:
    """Options shared by all commands built on random subspaces."""
    options = [
        click.option("--eps", "epsilon", type=float, default=0.5, show_default=True, help="Approximation parameter epsilon in (0, 1)."),
        click.option("--gamma", type=float, default=None, help="Constant gamma of the subspace dimension bound (default: setting FOCUSED_GAMMA)."),
        click.option("--trials", type=int, default=None, help="Odd number of subspaces for the median (default: setting FOCUSED_TRIALS)."),
        click.option("--k", "k_override", type=int, default=None, help="Use this subspace dimension instead of the bound."),
        click.option("--seed", type=int, default=None, help="Seed of the random subspaces (required for randomized runs)."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def output_options(command: Callable) -> Callable:
    options = [
        click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None, help="Write the JSON result to this file instead of stdout."),
        click.option("--with-timing/--without-timing", default=False, help="Embed the wall-clock duration in the manifest (makes output differ between runs)."),
    ]
    for option in reversed(options):
        command = option(command)
    return command
