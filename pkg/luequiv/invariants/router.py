from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from luequiv.bloch.models import BlochTensor2
from luequiv.dependencies import (
    DEFAULT_DEPTH,
    DEFAULT_TOL,
    DepthOption,
    TolOption,
    exit_on_error,
    get_repository,
)
from luequiv.invariants.compare import FIELD_ORDER3, fingerprint_digest, fingerprint_labels
from luequiv.invariants.fingerprint import fingerprint2, fingerprint3
from luequiv.invariants.models import Fingerprint2, Fingerprint3, FingerprintReport
from luequiv.statefile.repository import dump_json

router = typer.Typer()


def _text2(fp: Fingerprint2) -> list[str]:
    lines = []
    for field, labels in fingerprint_labels().items():
        value = getattr(fp, field)
        values = list(value) if isinstance(value, tuple | list) else [value]
        for label, item in zip(labels, values, strict=True):
            lines.append(f"{label:<22} {'-' if item is None else f'{item:.12g}'}")
    if fp.basis_mu is not None:
        lines.append(f"{'basis μ':<22} {fp.basis_mu}")
    if fp.basis_nu is not None:
        lines.append(f"{'basis ν':<22} {fp.basis_nu}")
    return lines


def _text3(fp: Fingerprint3) -> list[str]:
    lines = [f"depth {fp.depth}"]
    for field in FIELD_ORDER3:
        value = getattr(fp, field)
        if isinstance(value, np.ndarray):
            lines.append(f"{field} {value.shape[0]}×{value.shape[1]}:")
            lines.append(np.array2string(value, precision=10, max_line_width=120))
        else:
            lines.append(f"{field} {value}")
    return lines


@router.command("fingerprint")
def fingerprint(
    file: Annotated[Path, typer.Argument(help="State file to fingerprint.")],
    tol: TolOption = DEFAULT_TOL,
    depth: DepthOption = DEFAULT_DEPTH,
    json_output: Annotated[bool, typer.Option("--json/--text", help="Print JSON instead of text.")] = False,
) -> None:
    """Print the complete invariant fingerprint of a state."""
    with exit_on_error():
        state = get_repository().read_state(file)
        if isinstance(state.bloch, BlochTensor2):
            fp: Fingerprint2 | Fingerprint3 = fingerprint2(state.bloch)
        else:
            fp = fingerprint3(state.bloch, depth=depth)

    report = FingerprintReport(
        file=state.name,
        tol=tol,
        depth=depth if isinstance(fp, Fingerprint3) else None,
        digest=fingerprint_digest(fp, tol),
        fingerprint=fp,
    )
    if json_output:
        typer.echo(dump_json(report).decode())
        return

    typer.echo(f"# {report.file}: {fp.kind}, tol={tol:g}" + (f", depth={depth}" if report.depth else ""))
    for line in _text2(fp) if isinstance(fp, Fingerprint2) else _text3(fp):
        typer.echo(line)
    typer.echo(f"digest {report.digest}")
