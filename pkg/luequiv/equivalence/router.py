import asyncio
import logging
from itertools import combinations
from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from luequiv.bloch.models import BlochTensor2, BlochTensor3
from luequiv.config import settings
from luequiv.dependencies import (
    DEFAULT_DEPTH,
    DEFAULT_TOL,
    DepthOption,
    ExitCode,
    TolOption,
    exit_on_error,
    get_repository,
    usage_error,
)
from luequiv.equivalence.models import LocalUnitaryWitness, Verdict, VerdictKind
from luequiv.equivalence.three_qubit import decide3
from luequiv.equivalence.two_qubit import decide2
from luequiv.invariants.compare import fingerprint_digest, fingerprints_equal
from luequiv.invariants.fingerprint import fingerprint2, fingerprint3
from luequiv.invariants.models import Fingerprint2, Fingerprint3
from luequiv.statefile.models import LoadedState

logger = logging.getLogger(__name__)

router = typer.Typer()

EXIT_CODES = {
    VerdictKind.Equivalent: ExitCode.Success,
    VerdictKind.NotEquivalent: ExitCode.NotEquivalent,
    VerdictKind.Inconclusive: ExitCode.Inconclusive,
}
VERDICT_NAMES = {
    VerdictKind.Equivalent: "Equivalent",
    VerdictKind.NotEquivalent: "NotEquivalent",
    VerdictKind.Inconclusive: "Inconclusive",
}


def decide_states(a: LoadedState, b: LoadedState, tol: float, depth: int) -> Verdict:
    if isinstance(a.bloch, BlochTensor2) and isinstance(b.bloch, BlochTensor2):
        return decide2(a.bloch, b.bloch, tol=tol, rho_a=a.density, rho_b=b.density)
    if isinstance(a.bloch, BlochTensor3) and isinstance(b.bloch, BlochTensor3):
        return decide3(a.bloch, b.bloch, depth=depth, tol=tol, rho_a=a.density, rho_b=b.density)
    raise ValueError(f"{a.name} and {b.name} act on different numbers of qubits")


def state_fingerprint(state: LoadedState, depth: int) -> Fingerprint2 | Fingerprint3:
    if isinstance(state.bloch, BlochTensor2):
        return fingerprint2(state.bloch)
    return fingerprint3(state.bloch, depth=depth)


def _echo_witness(witness: LocalUnitaryWitness) -> None:
    for qubit, (rotation, unitary) in enumerate(
        zip(witness.rotations, witness.unitaries, strict=True), start=1
    ):
        typer.echo(f"O{qubit} =")
        typer.echo(np.array2string(rotation, precision=12, suppress_small=True))
        typer.echo(f"U{qubit} =")
        typer.echo(np.array2string(unitary, precision=12, suppress_small=True))
    for name, value in witness.tensor_residuals.items():
        typer.echo(f"residual {name} {value:.3e}")
    if witness.density_residual is not None:
        typer.echo(f"residual rho {witness.density_residual:.3e}")


@router.command("equiv")
def equiv(
    file_a: Annotated[Path, typer.Argument(help="First state file.")],
    file_b: Annotated[Path, typer.Argument(help="Second state file.")],
    tol: TolOption = DEFAULT_TOL,
    depth: DepthOption = DEFAULT_DEPTH,
    witness: Annotated[bool, typer.Option("--witness", help="Print the local unitaries on success.")] = False,
) -> None:
    """Decide whether two states are local-unitary equivalent."""
    with exit_on_error():
        repository = get_repository()
        a, b = repository.read_state(file_a), repository.read_state(file_b)
    if a.kind != b.kind or a.qubits != b.qubits:
        raise usage_error(
            f"{a.name} is a {a.qubits}-qubit {a.kind} state but {b.name} is a {b.qubits}-qubit {b.kind} state"
        )

    verdict = decide_states(a, b, tol, depth)
    typer.echo(
        f"{VERDICT_NAMES[verdict.kind]} (path={verdict.path}, tol={tol:g}, "
        f"witness_tol={tol * settings.WITNESS_TOL_FACTOR:g}"
        + (f", depth={depth})" if a.qubits == 3 else ")")
    )
    match verdict.kind:
        case VerdictKind.NotEquivalent if verdict.certificate is not None:
            certificate = verdict.certificate
            typer.echo(f"differs in {certificate.field}: {certificate.left} vs {certificate.right}")
        case VerdictKind.Inconclusive:
            typer.echo(f"reason: {verdict.reason}")
        case VerdictKind.Equivalent if witness and verdict.witness is not None:
            _echo_witness(verdict.witness)
    raise typer.Exit(code=EXIT_CODES[verdict.kind])


async def _decide_pairs(
    states: list[LoadedState],
    pairs: list[tuple[int, int]],
    tol: float,
    depth: int,
    max_concurrency: int,
) -> dict[tuple[int, int], Verdict]:
    semaphore = asyncio.Semaphore(max_concurrency)

    async def decide_rate_limited(i: int, j: int) -> tuple[tuple[int, int], Verdict]:
        async with semaphore:
            verdict = await asyncio.to_thread(decide_states, states[i], states[j], tol, depth)
            return (i, j), verdict

    results = await asyncio.gather(*(decide_rate_limited(i, j) for i, j in pairs))
    return dict(results)


def partition(
    states: list[LoadedState],
    tol: float,
    depth: int,
    max_concurrency: int = settings.CLASSIFY_CONCURRENCY,
) -> tuple[list[list[int]], list[tuple[int, int, str]]]:
    """
    Group states that are pairwise Equivalent, in file order.

    Pairs with different fingerprints are not decided. Returns the classes as index
    lists and every Inconclusive pair with its reason.
    """
    fingerprints = [state_fingerprint(state, depth) for state in states]
    candidates = [
        (i, j)
        for i, j in combinations(range(len(states)), 2)
        if fingerprints_equal(fingerprints[i], fingerprints[j], tol)[0]
    ]
    verdicts = asyncio.run(_decide_pairs(states, candidates, tol, depth, max_concurrency))

    classes: list[list[int]] = []
    for index in range(len(states)):
        for members in classes:
            if all(
                (member, index) in verdicts and verdicts[member, index].kind is VerdictKind.Equivalent
                for member in members
            ):
                members.append(index)
                break
        else:
            classes.append([index])
    inconclusive = [
        (i, j, verdict.reason or "")
        for (i, j), verdict in sorted(verdicts.items())
        if verdict.kind is VerdictKind.Inconclusive
    ]
    return classes, inconclusive


@router.command("classify")
def classify(
    directory: Annotated[Path, typer.Argument(help="Directory of state files.")],
    tol: TolOption = DEFAULT_TOL,
    depth: DepthOption = DEFAULT_DEPTH,
) -> None:
    """Partition a directory of states into local-unitary classes."""
    with exit_on_error():
        states = get_repository(directory).list_states()
    if not states:
        typer.echo(f"no state files in {directory}")
        return
    if len({(state.kind, state.qubits) for state in states}) > 1:
        raise usage_error(f"{directory} mixes state kinds; classify needs files of one kind")

    classes, inconclusive = partition(states, tol, depth)
    typer.echo(f"# {len(states)} states, {len(classes)} classes, tol={tol:g}, depth={depth}")
    for number, members in enumerate(classes, start=1):
        digest = fingerprint_digest(state_fingerprint(states[members[0]], depth), tol)
        names = " ".join(states[member].name for member in members)
        typer.echo(f"class {number} [{len(members)}] {digest[:16]}: {names}")
    for i, j, reason in inconclusive:
        typer.echo(f"inconclusive {states[i].name} {states[j].name}: {reason}")
