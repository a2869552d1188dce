from typing import Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from luequiv.config import settings
from luequiv.core.models import ComplexMatrix, Mat3, Mat3x9, Mat9, Tensor333, Vec3
from luequiv.errors import InvalidStateError


def density_violations(matrix: npt.NDArray[np.complex128], tol: float) -> list[str]:
    """Describe every way `matrix` fails to be a 4×4 or 8×8 density matrix."""
    if matrix.shape not in ((4, 4), (8, 8)):
        return [f"dimension must be 4 or 8, got {matrix.shape[0]}"]
    problems = []
    hermitian_gap = float(np.max(np.abs(matrix - matrix.conj().T)))
    if hermitian_gap > tol:
        problems.append(f"not Hermitian (max |ρ − ρ†| = {hermitian_gap:.3e})")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol:
        problems.append(f"trace is {trace.real:.12g}{trace.imag:+.3e}j, not 1")
    smallest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
    if smallest < -tol:
        problems.append(f"not positive semidefinite (smallest eigenvalue {smallest:.3e})")
    return problems


class DensityMatrix(BaseModel):
    """A validated 2- or 3-qubit density matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: ComplexMatrix = Field(
        description="Hermitian, unit-trace, positive semidefinite 4×4 or 8×8 matrix.",
    )
    tol: float = Field(
        default=settings.DENSITY_TOL,
        exclude=True,
        description="Tolerance used for the Hermiticity, trace and positivity checks.",
    )

    @model_validator(mode="after")
    def check_physical(self) -> Self:
        problems = density_violations(self.matrix, self.tol)
        if problems:
            raise ValueError("; ".join(problems))
        return self

    @classmethod
    def from_array(
        cls, matrix: npt.ArrayLike, tol: float = settings.DENSITY_TOL
    ) -> "DensityMatrix":
        """Validate `matrix`, raising InvalidStateError when it is not a physical state."""
        try:
            return cls(matrix=np.asarray(matrix), tol=tol)
        except ValidationError as exc:
            messages = "; ".join(str(error["msg"]) for error in exc.errors())
            raise InvalidStateError(f"Invalid density matrix: {messages}") from exc

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def qubits(self) -> int:
        return 2 if self.dim == 4 else 3


class ReconstructedState(BaseModel):
    """The matrix a set of Bloch data expands to, flagged when it is not positive."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: ComplexMatrix = Field(description="Hermitian unit-trace matrix from the expansion.")
    min_eigenvalue: float = Field(description="Smallest eigenvalue of the matrix.")
    physical: bool = Field(
        description="Whether the smallest eigenvalue is at least −tol, i.e. the data is a state."
    )

    def density(self) -> DensityMatrix:
        if not self.physical:
            raise InvalidStateError(
                f"Bloch data is not physical: smallest eigenvalue {self.min_eigenvalue:.3e}"
            )
        return DensityMatrix.from_array(self.matrix)


class BlochTensor2(BaseModel):
    """Local Bloch vectors and correlation matrix of a two-qubit state."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    T1: Vec3 = Field(description="T1ⁱ = tr(ρ·σᵢ⊗I).")
    T2: Vec3 = Field(description="T2ʲ = tr(ρ·I⊗σⱼ).")
    T12: Mat3 = Field(description="T12ⁱʲ = tr(ρ·σᵢ⊗σⱼ).")

    @classmethod
    def zeros(cls) -> "BlochTensor2":
        return cls(T1=np.zeros(3), T2=np.zeros(3), T12=np.zeros((3, 3)))

    def scaled(self, factor: float) -> "BlochTensor2":
        return BlochTensor2(T1=factor * self.T1, T2=factor * self.T2, T12=factor * self.T12)

    def same_as(self, other: "BlochTensor2") -> bool:
        return all(
            np.array_equal(mine, theirs)
            for mine, theirs in zip(self.arrays(), other.arrays(), strict=True)
        )

    def arrays(self) -> tuple[npt.NDArray[np.float64], ...]:
        return self.T1, self.T2, self.T12


class BlochTensor3(BaseModel):
    """Bloch vectors, pair correlations and the three-body tensor t_ijk of a three-qubit state."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    T1: Vec3
    T2: Vec3
    T3: Vec3
    T12: Mat3
    T13: Mat3
    T23: Mat3
    T123: Tensor333 = Field(description="t_ijk = tr(ρ·σᵢ⊗σⱼ⊗σₖ).")

    @classmethod
    def zeros(cls) -> "BlochTensor3":
        return cls(
            T1=np.zeros(3),
            T2=np.zeros(3),
            T3=np.zeros(3),
            T12=np.zeros((3, 3)),
            T13=np.zeros((3, 3)),
            T23=np.zeros((3, 3)),
            T123=np.zeros((3, 3, 3)),
        )

    def scaled(self, factor: float) -> "BlochTensor3":
        return BlochTensor3(
            T1=factor * self.T1,
            T2=factor * self.T2,
            T3=factor * self.T3,
            T12=factor * self.T12,
            T13=factor * self.T13,
            T23=factor * self.T23,
            T123=factor * self.T123,
        )

    def same_as(self, other: "BlochTensor3") -> bool:
        return all(
            np.array_equal(mine, theirs)
            for mine, theirs in zip(self.arrays(), other.arrays(), strict=True)
        )

    def arrays(self) -> tuple[npt.NDArray[np.float64], ...]:
        return self.T1, self.T2, self.T3, self.T12, self.T13, self.T23, self.T123

    def local(self, i: int) -> npt.NDArray[np.float64]:
        """Bloch vector of qubit i (1-based)."""
        return (self.T1, self.T2, self.T3)[i - 1]

    def pair(self, i: int, j: int) -> npt.NDArray[np.float64]:
        """Correlation matrix between qubits i and j, rows indexed by i."""
        pairs = {(1, 2): self.T12, (1, 3): self.T13, (2, 3): self.T23}
        if (i, j) in pairs:
            return pairs[(i, j)]
        return pairs[(j, i)].T


class Unfoldings3(BaseModel):
    """The three 3×9 unfoldings of T123 and their Gram matrices."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    T1_23: Mat3x9 = Field(description="Row i, column (j,k) with j major.")
    T2_13: Mat3x9 = Field(description="Row j, column (i,k) with i major.")
    T3_12: Mat3x9 = Field(description="Row k, column (i,j) with i major.")
    calT1: Mat3 = Field(description="T_{1|23}·T_{1|23}ᵗ.")
    calT2: Mat3 = Field(description="T_{2|13}·T_{2|13}ᵗ.")
    calT3: Mat3 = Field(description="T_{3|12}·T_{3|12}ᵗ.")
    calT23: Mat9 = Field(description="T_{1|23}ᵗ·T_{1|23}.")
    calT13: Mat9 = Field(description="T_{2|13}ᵗ·T_{2|13}.")
    calT12: Mat9 = Field(description="T_{3|12}ᵗ·T_{3|12}.")

    def unfolding(self, i: int) -> npt.NDArray[np.float64]:
        return (self.T1_23, self.T2_13, self.T3_12)[i - 1]

    def gram(self, i: int) -> npt.NDArray[np.float64]:
        return (self.calT1, self.calT2, self.calT3)[i - 1]
