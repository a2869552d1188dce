from collections.abc import Callable
from typing import Annotated, Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

type RVec3 = npt.NDArray[np.float64]
type RMat3 = npt.NDArray[np.float64]


def _real_array(shape: tuple[int, ...]) -> Callable[[Any], npt.NDArray[np.float64]]:
    def validate(value: Any) -> npt.NDArray[np.float64]:
        array = np.array(value, dtype=np.float64)
        if array.shape != shape:
            raise ValueError(f"Expected shape {shape}, got {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("Entries must be finite")
        return array

    return validate


def _real_matrix(value: Any) -> npt.NDArray[np.float64]:
    array = np.array(value, dtype=np.float64)
    if array.size == 0:
        return array.reshape(0, 0)
    if array.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("Entries must be finite")
    return array


def _complex_square(value: Any) -> npt.NDArray[np.complex128]:
    if isinstance(value, dict):
        array = np.array(value["re"], dtype=np.float64) + 1j * np.array(
            value["im"], dtype=np.float64
        )
    else:
        array = np.array(value, dtype=np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("Entries must be finite")
    return array


def _real_to_list(array: npt.NDArray[np.float64]) -> list[Any]:
    return array.tolist()  # type: ignore[no-any-return]


def _complex_to_planes(array: npt.NDArray[np.complex128]) -> dict[str, list[Any]]:
    return {"re": array.real.tolist(), "im": array.imag.tolist()}


Vec3 = Annotated[
    np.ndarray,
    BeforeValidator(_real_array((3,))),
    PlainSerializer(_real_to_list, return_type=list),
]
Mat3 = Annotated[
    np.ndarray,
    BeforeValidator(_real_array((3, 3))),
    PlainSerializer(_real_to_list, return_type=list),
]
Tensor333 = Annotated[
    np.ndarray,
    BeforeValidator(_real_array((3, 3, 3))),
    PlainSerializer(_real_to_list, return_type=list),
]
Mat3x9 = Annotated[
    np.ndarray,
    BeforeValidator(_real_array((3, 9))),
    PlainSerializer(_real_to_list, return_type=list),
]
Mat9 = Annotated[
    np.ndarray,
    BeforeValidator(_real_array((9, 9))),
    PlainSerializer(_real_to_list, return_type=list),
]
RealMatrix = Annotated[
    np.ndarray,
    BeforeValidator(_real_matrix),
    PlainSerializer(_real_to_list, return_type=list),
]
ComplexMatrix = Annotated[
    np.ndarray,
    BeforeValidator(_complex_square),
    PlainSerializer(_complex_to_planes, return_type=dict),
]


class Svd3Result(BaseModel):
    """Singular value decomposition m = left · diag(sigma) · rightᵗ of a real 3×3 matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    left: Mat3 = Field(
        description="Orthogonal 3×3 matrix whose columns are the left singular vectors.",
    )
    right: Mat3 = Field(
        description="Orthogonal 3×3 matrix whose columns are the right singular vectors.",
    )
    sigma: Vec3 = Field(
        description="The three singular values, nonnegative and sorted descending.",
    )

    def reconstruct(self) -> RMat3:
        return self.left @ np.diag(self.sigma) @ self.right.T
