from pathlib import Path
from typing import Annotated

import numpy as np
import typer

from luequiv.bloch.models import BlochTensor2, BlochTensor3, DensityMatrix
from luequiv.bloch.pauli import to_bloch2, to_bloch3, transform_bloch2, transform_bloch3
from luequiv.dependencies import exit_on_error, get_repository, usage_error
from luequiv.equivalence.double_cover import su2_to_so3
from luequiv.equivalence.models import LocalUnitaryWitness
from luequiv.statekit.generators import (
    bell_state,
    ghz_state,
    orbit_pair,
    paper_counterexample,
    random_density,
)
from luequiv.statekit.models import GenKind, OrbitBase, RngSeed

router = typer.Typer()


def ground_truth_witness(
    rho: DensityMatrix, image: DensityMatrix, unitaries: list[np.ndarray]
) -> LocalUnitaryWitness:
    """The applied unitaries with their rotations and the residuals they leave."""
    rotations = [su2_to_so3(u) for u in unitaries]
    expected: BlochTensor2 | BlochTensor3
    actual: BlochTensor2 | BlochTensor3
    if rho.qubits == 2:
        expected, actual = to_bloch2(image), transform_bloch2(to_bloch2(rho), rotations)
    else:
        expected, actual = to_bloch3(image), transform_bloch3(to_bloch3(rho), rotations)
    residuals = {
        name: float(np.linalg.norm(left - right))
        for name, left, right in zip(
            type(expected).model_fields, expected.arrays(), actual.arrays(), strict=True
        )
    }
    return LocalUnitaryWitness(
        rotations=rotations,
        unitaries=unitaries,
        residual=max(residuals.values()),
        tensor_residuals=residuals,
        density_residual=0.0,
    )


def _orbit_base(base: OrbitBase, qubits: int, seed: RngSeed) -> DensityMatrix:
    match base:
        case OrbitBase.Random:
            return random_density(2**qubits, seed)
        case OrbitBase.Ghz if qubits == 3:
            return ghz_state()
        case OrbitBase.Bell if qubits == 2:
            return bell_state()
    raise usage_error(f"--base {base} needs --qubits {3 if base is OrbitBase.Ghz else 2}")


@router.command("gen")
def gen(
    kind: Annotated[GenKind, typer.Option("--kind", help="What to generate.")],
    qubits: Annotated[int, typer.Option("--qubits", min=2, max=3)] = 2,
    seed: Annotated[int, typer.Option("--seed", min=0, max=2**64 - 1)] = 0,
    out: Annotated[Path, typer.Option("--out", help="Directory the files are written to.")] = Path("."),
    base: Annotated[
        OrbitBase, typer.Option("--base", help="State whose orbit --kind orbit samples.")
    ] = OrbitBase.Random,
) -> None:
    """Write a generated state, or a pair of states, as JSON files."""
    repository = get_repository(out)
    rng_seed = RngSeed(seed=seed)
    written: list[Path] = []
    with exit_on_error():
        match kind:
            case GenKind.Random:
                written.append(repository.write_state("state.json", random_density(2**qubits, rng_seed)))
            case GenKind.Bell:
                if qubits != 2:
                    raise usage_error("--kind bell needs --qubits 2")
                written.append(repository.write_state("state.json", bell_state()))
            case GenKind.Ghz:
                if qubits != 3:
                    raise usage_error("--kind ghz needs --qubits 3")
                written.append(repository.write_state("state.json", ghz_state()))
            case GenKind.Counterexample:
                if qubits != 2:
                    raise usage_error("--kind counterexample needs --qubits 2")
                first, second = paper_counterexample(rng_seed)
                written.append(repository.write_state("state_a.json", first))
                written.append(repository.write_state("state_b.json", second))
            case GenKind.Orbit:
                base_seed, orbit_seed = rng_seed.spawn(2)
                rho = _orbit_base(base, qubits, base_seed)
                image, unitaries = orbit_pair(rho, orbit_seed)
                written.append(repository.write_state("state_a.json", rho))
                written.append(repository.write_state("state_b.json", image))
                written.append(
                    repository.write_witness(
                        "witness.json", ground_truth_witness(rho, image, unitaries)
                    )
                )
    for path in written:
        typer.echo(f"wrote {path}")
