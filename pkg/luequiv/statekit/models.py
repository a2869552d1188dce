from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from luequiv.core.models import ComplexMatrix


class GenKind(StrEnum):
    Random = "random"
    Orbit = "orbit"
    Counterexample = "counterexample"
    Ghz = "ghz"
    Bell = "bell"


class OrbitBase(StrEnum):
    Random = "random"
    Ghz = "ghz"
    Bell = "bell"


class DegenerateCase(StrEnum):
    """Singular-value patterns of T12 that send a decision down the stabilizer path."""

    DistinctZeroCoordinate = "distinct_zero_coordinate"
    ZeroSingularValue = "zero_singular_value"
    PairDegenerate = "pair_degenerate"
    PairDegenerateZero = "pair_degenerate_zero"
    SingleNonzero = "single_nonzero"
    AllEqual = "all_equal"
    ZeroCorrelation = "zero_correlation"
    BellDiagonal = "bell_diagonal"


class RngSeed(BaseModel):
    seed: int = Field(ge=0, lt=2**64, description="Seed of every random draw derived from it.")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.seed)

    def spawn(self, n: int) -> list["RngSeed"]:
        """Independent child seeds, stable for a given parent."""
        return [
            RngSeed(seed=int(child.generate_state(1, np.uint64)[0]))
            for child in self.sequence().spawn(n)
        ]


def as_seed(seed: "RngSeed | int") -> RngSeed:
    return seed if isinstance(seed, RngSeed) else RngSeed(seed=seed)


class OracleResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    min_distance: float = Field(ge=0, description="Best ‖σ − UρU†‖_F found, an upper bound on the orbit distance.")
    best_unitaries: list[ComplexMatrix] = Field(description="Per-qubit SU(2) factors at the best point.")
    restarts_used: int = Field(ge=0)
    history: list[float] = Field(
        default_factory=list,
        description="Best distance after each restart; nonincreasing.",
    )
