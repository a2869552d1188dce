"""
On-disk JSON forms of states and witnesses.

Bloch tensors are stored as flat row-major arrays: T12[3·i + j] = T12ⁱʲ and
T123[9·a + 3·b + c] = T123ᵃᵇᶜ, with Pauli indices 0, 1, 2 for x, y, z.
"""

from enum import StrEnum
from typing import Annotated, Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from luequiv.bloch.models import BlochTensor2, BlochTensor3, DensityMatrix
from luequiv.bloch.pauli import to_bloch2, to_bloch3
from luequiv.equivalence.models import LocalUnitaryWitness
from luequiv.errors import StateFileError

Flat3 = Annotated[list[float], Field(min_length=3, max_length=3)]
Flat9 = Annotated[list[float], Field(min_length=9, max_length=9)]
Flat27 = Annotated[list[float], Field(min_length=27, max_length=27)]


class StateKind(StrEnum):
    Density = "density"
    Bloch2 = "bloch2"
    Bloch3 = "bloch3"


class DensityFile(BaseModel):
    kind: Literal["density"] = "density"
    dim: int = Field(description="Matrix dimension, 4 for two qubits and 8 for three.")
    re: list[list[float]] = Field(description="Real plane of ρ, row by row.")
    im: list[list[float]] = Field(description="Imaginary plane of ρ, row by row.")

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        if self.dim not in (4, 8):
            raise ValueError(f"dim must be 4 or 8, got {self.dim}")
        for name, plane in (("re", self.re), ("im", self.im)):
            if len(plane) != self.dim or any(len(row) != self.dim for row in plane):
                raise ValueError(f"{name} must be a {self.dim}×{self.dim} array")
        return self

    def to_state(self) -> DensityMatrix:
        return DensityMatrix.from_array(np.array(self.re) + 1j * np.array(self.im))

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "DensityFile":
        return cls(dim=rho.dim, re=rho.matrix.real.tolist(), im=rho.matrix.imag.tolist())


class Bloch2File(BaseModel):
    kind: Literal["bloch2"] = "bloch2"
    T1: Flat3
    T2: Flat3
    T12: Flat9 = Field(description="Row-major T12ⁱʲ.")

    def to_state(self) -> BlochTensor2:
        return BlochTensor2(T1=self.T1, T2=self.T2, T12=np.reshape(self.T12, (3, 3)))

    @classmethod
    def from_state(cls, b: BlochTensor2) -> "Bloch2File":
        return cls(T1=b.T1.tolist(), T2=b.T2.tolist(), T12=b.T12.ravel().tolist())


class Bloch3File(BaseModel):
    kind: Literal["bloch3"] = "bloch3"
    T1: Flat3
    T2: Flat3
    T3: Flat3
    T12: Flat9
    T13: Flat9
    T23: Flat9
    T123: Flat27 = Field(description="Row-major T123ᵃᵇᶜ, index 9·a + 3·b + c.")

    def to_state(self) -> BlochTensor3:
        return BlochTensor3(
            T1=self.T1,
            T2=self.T2,
            T3=self.T3,
            T12=np.reshape(self.T12, (3, 3)),
            T13=np.reshape(self.T13, (3, 3)),
            T23=np.reshape(self.T23, (3, 3)),
            T123=np.reshape(self.T123, (3, 3, 3)),
        )

    @classmethod
    def from_state(cls, b: BlochTensor3) -> "Bloch3File":
        return cls(
            T1=b.T1.tolist(),
            T2=b.T2.tolist(),
            T3=b.T3.tolist(),
            T12=b.T12.ravel().tolist(),
            T13=b.T13.ravel().tolist(),
            T23=b.T23.ravel().tolist(),
            T123=b.T123.ravel().tolist(),
        )


class WitnessFile(BaseModel):
    """Ground-truth local unitaries mapping state_a onto state_b."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Literal["witness"] = "witness"
    witness: LocalUnitaryWitness


StateFile = Annotated[DensityFile | Bloch2File | Bloch3File, Field(discriminator="kind")]
AnyFile = Annotated[
    DensityFile | Bloch2File | Bloch3File | WitnessFile, Field(discriminator="kind")
]


class LoadedState(BaseModel):
    """A parsed state file, with its Bloch data and, for density files, the matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(description="File name the state was read from.")
    kind: StateKind
    bloch: BlochTensor2 | BlochTensor3
    density: DensityMatrix | None = None

    @property
    def qubits(self) -> int:
        return 2 if isinstance(self.bloch, BlochTensor2) else 3

    @classmethod
    def from_file(cls, name: str, file: StateFile) -> "LoadedState":
        """Build the state, raising StateFileError when the stored numbers are unusable."""
        try:
            return cls._from_file(name, file)
        except ValidationError as exc:
            messages = "; ".join(str(error["msg"]) for error in exc.errors())
            raise StateFileError(f"{name} holds unusable data: {messages}") from exc

    @classmethod
    def _from_file(cls, name: str, file: StateFile) -> "LoadedState":
        match file:
            case DensityFile():
                rho = file.to_state()
                bloch = to_bloch2(rho) if rho.qubits == 2 else to_bloch3(rho)
                return cls(name=name, kind=StateKind.Density, bloch=bloch, density=rho)
            case Bloch2File():
                return cls(name=name, kind=StateKind.Bloch2, bloch=file.to_state())
            case Bloch3File():
                return cls(name=name, kind=StateKind.Bloch3, bloch=file.to_state())


def state_file_for(
    state: DensityMatrix | BlochTensor2 | BlochTensor3,
) -> DensityFile | Bloch2File | Bloch3File:
    match state:
        case DensityMatrix():
            return DensityFile.from_state(state)
        case BlochTensor2():
            return Bloch2File.from_state(state)
        case BlochTensor3():
            return Bloch3File.from_state(state)
