from enum import StrEnum
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from luequiv.core.linalg import is_special_orthogonal
from luequiv.core.models import ComplexMatrix, Mat3, Vec3
from luequiv.equivalence.double_cover import is_special_unitary
from luequiv.invariants.models import Certificate


class VerdictKind(StrEnum):
    Equivalent = "equivalent"
    NotEquivalent = "not_equivalent"
    Inconclusive = "inconclusive"


class LocalUnitaryWitness(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    rotations: list[Mat3] = Field(description="One SO(3) rotation per qubit, acting on Bloch vectors.")
    unitaries: list[ComplexMatrix] = Field(description="SU(2) lift of each rotation.")
    residual: float = Field(ge=0, description="Largest Frobenius residual over the tensor relations.")
    tensor_residuals: dict[str, float] = Field(
        default_factory=dict,
        description="Frobenius residual of each relation, e.g. 'T12' for ‖T̂₁₂ − O₁T₁₂O₂ᵗ‖.",
    )
    density_residual: float | None = Field(
        default=None,
        description="‖ρ̂ − UρU†‖_F when density matrices were supplied.",
    )

    @model_validator(mode="after")
    def check_groups(self) -> Self:
        if len(self.rotations) != len(self.unitaries):
            raise ValueError("Each rotation needs exactly one SU(2) lift")
        for rotation in self.rotations:
            if not is_special_orthogonal(rotation, 1e-8):
                raise ValueError("Witness rotations must lie in SO(3)")
        for unitary in self.unitaries:
            if unitary.shape != (2, 2) or not is_special_unitary(unitary, 1e-8):
                raise ValueError("Witness unitaries must lie in SU(2)")
        return self

    @classmethod
    def identity(cls, qubits: int) -> "LocalUnitaryWitness":
        return cls(
            rotations=[np.eye(3)] * qubits,
            unitaries=[np.eye(2, dtype=np.complex128)] * qubits,
            residual=0.0,
        )


class Verdict(BaseModel):
    """Outcome of an equivalence decision; exactly one payload matches the kind."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: VerdictKind
    witness: LocalUnitaryWitness | None = None
    certificate: Certificate | None = None
    reason: str | None = None
    path: str | None = Field(
        default=None,
        description="Which construction produced the witness or where the decision stopped.",
    )

    @model_validator(mode="after")
    def check_payload(self) -> Self:
        expected = {
            VerdictKind.Equivalent: "witness",
            VerdictKind.NotEquivalent: "certificate",
            VerdictKind.Inconclusive: "reason",
        }[self.kind]
        populated = [
            name
            for name in ("witness", "certificate", "reason")
            if getattr(self, name) is not None
        ]
        if populated != [expected]:
            raise ValueError(f"A {self.kind} verdict carries exactly a {expected}, got {populated}")
        return self

    @classmethod
    def equivalent(cls, witness: LocalUnitaryWitness, path: str) -> "Verdict":
        return cls(kind=VerdictKind.Equivalent, witness=witness, path=path)

    @classmethod
    def not_equivalent(cls, certificate: Certificate, path: str = "invariants") -> "Verdict":
        return cls(kind=VerdictKind.NotEquivalent, certificate=certificate, path=path)

    @classmethod
    def inconclusive(cls, reason: str, path: str) -> "Verdict":
        return cls(kind=VerdictKind.Inconclusive, reason=reason, path=path)


class LpsRecord(BaseModel):
    """Eigen-data of 𝒯ᵢ behind the earlier sufficient criterion det ΛᵢΘᵢ ≠ 0."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalues: Mat3 = Field(description="Row i holds t_i1 ≥ t_i2 ≥ t_i3, the eigenvalues of 𝒯ᵢ.")
    rotated_mean: Mat3 = Field(description="Row i holds a_i1..a_i3, the entries of PᵢTᵢ.")
    det_lambda_theta: Vec3 = Field(description="det ΛᵢΘᵢ for i = 1, 2, 3.")
    applicable: bool = Field(description="All three determinants exceed the tolerance in magnitude.")


class CoverageRecord(BaseModel):
    dims: tuple[int, int, int]
    theorem3_applicable: bool = Field(description="At least two family dimensions equal 3.")
    lps_applicable: bool
