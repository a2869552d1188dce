from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field, JsonValue, model_validator

from luequiv.core.models import Mat3, RealMatrix

type BasisIndices = tuple[int, int, int]


class Fingerprint2(BaseModel):
    """Complete LU-invariant record of a two-qubit state."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Literal["two_qubit"] = "two_qubit"
    dims: tuple[int, int] = Field(description="(dim⟨S₁⟩, dim⟨S₂⟩).")
    L: list[float] = Field(
        min_length=9,
        max_length=9,
        description="⟨μᵢ,μᵢ⟩, ⟨νᵢ,νᵢ⟩ for i = 1, 2, 3, then ⟨μ₁,μⱼ⟩ for j = 2, 4, 6.",
    )
    triple_mu: float | None = Field(
        default=None, description="(μ_r₀, μ_s₀, μ_t₀) at the pick_basis triple; none when dim⟨S₁⟩ < 3."
    )
    triple_nu: float | None = Field(
        default=None, description="(ν_r₀, ν_s₀, ν_t₀) at the pick_basis triple; none when dim⟨S₂⟩ < 3."
    )
    basis_mu: BasisIndices | None = Field(default=None, description="1-based positions of μ_r₀, μ_s₀, μ_t₀.")
    basis_nu: BasisIndices | None = Field(default=None, description="1-based positions of ν_r₀, ν_s₀, ν_t₀.")
    tr_alpha: tuple[float, float] = Field(description="tr(T₁₂T₁₂ᵗ)^α for α = 1, 2.")
    det_T12: float
    inv_I: float = Field(description="ε_ijk ε_lmn T₁ⁱ T₂ˡ T₁₂ʲᵐ T₁₂ᵏⁿ.")

    @model_validator(mode="after")
    def check_triples(self) -> Self:
        if (self.triple_mu is None) != (self.dims[0] < 3):
            raise ValueError("triple_mu must be present exactly when dim⟨S₁⟩ = 3")
        if (self.triple_nu is None) != (self.dims[1] < 3):
            raise ValueError("triple_nu must be present exactly when dim⟨S₂⟩ = 3")
        return self


class Fingerprint3(BaseModel):
    """Invariant record of a three-qubit state at a fixed family depth."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: Literal["three_qubit"] = "three_qubit"
    depth: int = Field(ge=1, le=3, description="Number of generation rounds behind the families.")
    truncated: bool = Field(default=False, description="Whether any family hit the member cap.")
    dims: tuple[int, int, int]
    gram_mu: RealMatrix = Field(description="Gram matrix of S₁ in member order.")
    gram_nu: RealMatrix = Field(description="Gram matrix of S₂ in member order.")
    gram_omega: RealMatrix = Field(description="Gram matrix of S₃ in member order.")
    triples: list[float | None] = Field(
        min_length=3,
        max_length=3,
        description="Triple product of each family's first independent triple, none when dim < 3.",
    )
    bases: list[BasisIndices | None] = Field(min_length=3, max_length=3)
    aux_traces: Mat3 = Field(description="Entry (i, r) is tr(𝒯ᵢʳ).")
    aux_quad: Mat3 = Field(description="Entry (i, r) is Tᵢᵗ 𝒯ᵢ^(r−1) Tᵢ.")

    def gram(self, i: int) -> RealMatrix:
        return (self.gram_mu, self.gram_nu, self.gram_omega)[i - 1]


type Fingerprint = Fingerprint2 | Fingerprint3


class Certificate(BaseModel):
    """The first invariant on which two states differ."""

    field: str = Field(description="Name of the differing fingerprint field.")
    left: JsonValue = Field(description="Value for the first state.")
    right: JsonValue = Field(description="Value for the second state.")


class FingerprintReport(BaseModel):
    """What `luequiv fingerprint --json` prints."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    file: str
    tol: float = Field(description="Comparison tolerance the digest was rounded at.")
    depth: int | None = Field(default=None, description="Family depth, for three-qubit states.")
    digest: str = Field(description="SHA-256 of the canonical text form.")
    fingerprint: Fingerprint2 | Fingerprint3 = Field(discriminator="kind")
