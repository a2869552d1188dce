from typing import Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from luequiv.core.models import Vec3

SYMBOLS = {1: "μ", 2: "ν", 3: "ω"}


class VectorFamily(BaseModel):
    """An ordered, LU-covariant list of 3-vectors attached to one qubit."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: int = Field(ge=1, le=3, description="The qubit whose rotation acts on the members.")
    members: list[Vec3] = Field(description="Member vectors in generation order.")
    tags: list[str] = Field(description="How each member was built from the Bloch data.")
    dim: int = Field(ge=0, le=3, description="Numerical dimension of the span of the members.")
    truncated: bool = Field(
        default=False,
        description="Set when generation stopped at the member cap.",
    )

    @model_validator(mode="after")
    def check_tags(self) -> Self:
        if len(self.tags) != len(self.members):
            raise ValueError(
                f"{len(self.members)} members but {len(self.tags)} tags in family {self.label}"
            )
        return self

    @property
    def symbol(self) -> str:
        return SYMBOLS[self.label]

    def matrix(self) -> npt.NDArray[np.float64]:
        """Members as the columns of a 3×n matrix."""
        if not self.members:
            return np.zeros((3, 0))
        return np.column_stack(self.members)

    def gram(self) -> npt.NDArray[np.float64]:
        columns = self.matrix()
        return columns.T @ columns
