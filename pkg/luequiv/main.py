import logging

import typer

from luequiv.config import settings
from luequiv.equivalence.router import router as equivalence_router
from luequiv.invariants.router import router as invariants_router
from luequiv.statekit.router import router as statekit_router

app = typer.Typer(
    name="luequiv",
    help="""\
Local unitary equivalence of two- and three-qubit states.

Fingerprints states by complete sets of LU invariants, decides equivalence with an
explicit witness (local rotations and their SU(2) lifts), partitions corpora into
classes, and generates test states and orbit pairs.

Exit codes: 0 equivalent or success, 1 not equivalent, 2 usage or parse error,
3 invalid state, 4 inconclusive.
""",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


@app.callback()
def configure_logging(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log decision paths at INFO."),
) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else settings.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def include_router(target: typer.Typer, router: typer.Typer) -> None:
    target.registered_commands.extend(router.registered_commands)


include_router(app, invariants_router)
include_router(app, equivalence_router)
include_router(app, statekit_router)


if __name__ == "__main__":
    app()
