"""Shared command options, exit codes and error mapping for the command-line routers."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from enum import IntEnum
from pathlib import Path
from typing import Annotated

import typer

from luequiv.config import settings
from luequiv.errors import FingerprintMismatchError, InvalidStateError, StateFileError
from luequiv.statefile.repository import StateFileRepository

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    Success = 0
    NotEquivalent = 1
    Usage = 2
    InvalidState = 3
    Inconclusive = 4


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Turn library errors into the stable exit codes, with the message on stderr."""
    try:
        yield
    except (StateFileError, FingerprintMismatchError) as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=ExitCode.Usage)
    except InvalidStateError as exc:
        typer.echo(f"error: {exc}", err=True)
        raise typer.Exit(code=ExitCode.InvalidState)


def usage_error(message: str) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code=ExitCode.Usage)


def get_repository(directory: Path = Path(".")) -> StateFileRepository:
    return StateFileRepository(directory)


TolOption = Annotated[
    float,
    typer.Option("--tol", min=0.0, help="Absolute tolerance for invariant comparison."),
]
DepthOption = Annotated[
    int,
    typer.Option("--depth", min=1, max=3, help="Generation rounds of the three-qubit families."),
]

DEFAULT_TOL = settings.COMPARISON_TOL
DEFAULT_DEPTH = settings.FAMILY_DEPTH
