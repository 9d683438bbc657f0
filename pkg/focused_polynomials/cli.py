"""
Standalone entry point: `focused <command> ...`.

Inside a Flask host the same commands are available as `flask focused <command>`,
once the blueprint is registered.
"""
from typing import Any, Dict, Optional, Sequence
import json
import logging
import os
import sys

import click
from flask import Flask
from flask.cli import ScriptInfo

from . import __settings__, focused_bp
from .exceptions import CapExceededError, NotFocusedError, ValidationError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_NOT_APPLICABLE = 3  # caps exceeded or vectors not focused
EXIT_UNKNOWN_COMMAND = 64

PROG_NAME = "focused"


def _decode(value: str) -> Any:
    """Environment values are JSON when possible (FOCUSED_THREADS=4), strings otherwise."""
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def create_app(config: Optional[Dict[str, Any]] = None) -> Flask:
    """
    A minimal app hosting the focused blueprint. Settings are read from environment
    variables of the same name, then overridden by `config`.
    """
    app = Flask("focused_polynomials")
    app.logger.setLevel(os.environ.get("FOCUSED_LOGGING_LEVEL", "WARNING").upper())
    for key, meta in __settings__.items():
        if key in os.environ:
            app.config[key] = _decode(os.environ[key])
        elif "message_if_missing" in meta:
            app.logger.log(
                logging.getLevelName(meta["level"].upper()),
                f"{key} not set; {meta['message_if_missing']}",
            )
    app.config.update(config or {})
    app.register_blueprint(focused_bp)
    return app


def _usage() -> str:
    group = focused_bp.cli
    with click.Context(group, info_name=PROG_NAME) as ctx:
        return group.get_help(ctx)


def cmd_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and map the outcome to an exit code: 0 on success, 2 for invalid
    input, 3 when a cap is exceeded or the method does not apply, 64 for an unknown command.
    JSON goes to stdout, diagnostics to stderr.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    group = focused_bp.cli
    if args and not args[0].startswith("-") and args[0] not in group.commands:
        click.echo(f"Error: unknown command {args[0]!r}.\n", err=True)
        click.echo(_usage(), err=True)
        return EXIT_UNKNOWN_COMMAND
    try:
        group.main(
            args,
            prog_name=PROG_NAME,
            obj=ScriptInfo(create_app=create_app),
            standalone_mode=False,
        )
    except ValidationError as e:
        click.echo(f"Invalid input: {e}", err=True)
        return EXIT_VALIDATION
    except (CapExceededError, NotFocusedError) as e:
        click.echo(f"Not applicable: {e}", err=True)
        return EXIT_NOT_APPLICABLE
    except click.ClickException as e:
        e.show()
        return EXIT_VALIDATION
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_FAILURE
    return EXIT_OK


def main():
    sys.exit(cmd_dispatch())
