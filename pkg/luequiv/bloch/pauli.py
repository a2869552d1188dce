"""Pauli expansion of two- and three-qubit states and the three-body unfoldings."""

from collections.abc import Sequence
from functools import reduce

import numpy as np
import numpy.typing as npt

from luequiv.bloch.models import (
    BlochTensor2,
    BlochTensor3,
    DensityMatrix,
    ReconstructedState,
    Unfoldings3,
)
from luequiv.config import settings
from luequiv.errors import InvalidStateError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
# identity first, so index m of BASIS is σ_m with σ_0 = I
BASIS = np.stack([np.eye(2, dtype=np.complex128), SIGMA_X, SIGMA_Y, SIGMA_Z])


def _require_dim(rho: DensityMatrix, dim: int) -> None:
    if rho.dim != dim:
        raise InvalidStateError(f"Expected a {dim}×{dim} density matrix, got {rho.dim}×{rho.dim}")


def _reconstructed(matrix: npt.NDArray[np.complex128], tol: float) -> ReconstructedState:
    smallest = float(np.linalg.eigvalsh(matrix)[0])
    return ReconstructedState(matrix=matrix, min_eigenvalue=smallest, physical=smallest >= -tol)


def to_bloch2(rho: DensityMatrix) -> BlochTensor2:
    _require_dim(rho, 4)
    coefficients = np.einsum(
        "abcd,mca,ndb->mn", rho.matrix.reshape(2, 2, 2, 2), BASIS, BASIS
    ).real
    return BlochTensor2(T1=coefficients[1:, 0], T2=coefficients[0, 1:], T12=coefficients[1:, 1:])


def from_bloch2(b: BlochTensor2, tol: float = settings.DENSITY_TOL) -> ReconstructedState:
    coefficients = np.zeros((4, 4))
    coefficients[0, 0] = 1.0
    coefficients[1:, 0] = b.T1
    coefficients[0, 1:] = b.T2
    coefficients[1:, 1:] = b.T12
    matrix = np.einsum("mn,mac,nbd->abcd", coefficients, BASIS, BASIS).reshape(4, 4) / 4
    return _reconstructed(matrix, tol)


def to_bloch3(rho: DensityMatrix) -> BlochTensor3:
    _require_dim(rho, 8)
    c = np.einsum(
        "abcdef,mda,neb,ofc->mno", rho.matrix.reshape(2, 2, 2, 2, 2, 2), BASIS, BASIS, BASIS
    ).real
    return BlochTensor3(
        T1=c[1:, 0, 0],
        T2=c[0, 1:, 0],
        T3=c[0, 0, 1:],
        T12=c[1:, 1:, 0],
        T13=c[1:, 0, 1:],
        T23=c[0, 1:, 1:],
        T123=c[1:, 1:, 1:],
    )


def from_bloch3(b: BlochTensor3, tol: float = settings.DENSITY_TOL) -> ReconstructedState:
    c = np.zeros((4, 4, 4))
    c[0, 0, 0] = 1.0
    c[1:, 0, 0] = b.T1
    c[0, 1:, 0] = b.T2
    c[0, 0, 1:] = b.T3
    c[1:, 1:, 0] = b.T12
    c[1:, 0, 1:] = b.T13
    c[0, 1:, 1:] = b.T23
    c[1:, 1:, 1:] = b.T123
    matrix = np.einsum("mno,mad,nbe,ocf->abcdef", c, BASIS, BASIS, BASIS).reshape(8, 8) / 8
    return _reconstructed(matrix, tol)


def unfold3(b: BlochTensor3) -> Unfoldings3:
    """
    Matricize T123 along each mode.

    T_{1|23} has columns ordered (11),(12),(13),(21),... over (j,k); T_{2|13} and
    T_{3|12} keep the remaining indices in ascending qubit order, first index major.
    With this layout T̂_{k|ij} = O_k·T_{k|ij}·(O_i ⊗ O_j)ᵗ using numpy's kron.
    """
    t1 = b.T123.reshape(3, 9)
    t2 = b.T123.transpose(1, 0, 2).reshape(3, 9)
    t3 = b.T123.transpose(2, 0, 1).reshape(3, 9)
    return Unfoldings3(
        T1_23=t1,
        T2_13=t2,
        T3_12=t3,
        calT1=t1 @ t1.T,
        calT2=t2 @ t2.T,
        calT3=t3 @ t3.T,
        calT23=t1.T @ t1,
        calT13=t2.T @ t2,
        calT12=t3.T @ t3,
    )


def transform_bloch2(b: BlochTensor2, rotations: Sequence[npt.NDArray[np.float64]]) -> BlochTensor2:
    """Bloch data of (U₁⊗U₂)ρ(U₁⊗U₂)† given Oᵢ = su2_to_so3(Uᵢ)."""
    o1, o2 = rotations
    return BlochTensor2(T1=o1 @ b.T1, T2=o2 @ b.T2, T12=o1 @ b.T12 @ o2.T)


def transform_bloch3(b: BlochTensor3, rotations: Sequence[npt.NDArray[np.float64]]) -> BlochTensor3:
    o1, o2, o3 = rotations
    return BlochTensor3(
        T1=o1 @ b.T1,
        T2=o2 @ b.T2,
        T3=o3 @ b.T3,
        T12=o1 @ b.T12 @ o2.T,
        T13=o1 @ b.T13 @ o3.T,
        T23=o2 @ b.T23 @ o3.T,
        T123=np.einsum("ia,jb,kc,abc->ijk", o1, o2, o3, b.T123),
    )


def local_operator(unitaries: Sequence[npt.NDArray[np.complex128]]) -> npt.NDArray[np.complex128]:
    return reduce(np.kron, unitaries)


def conjugate(
    rho: DensityMatrix, unitaries: Sequence[npt.NDArray[np.complex128]]
) -> DensityMatrix:
    """(U₁⊗…⊗Uₙ)·ρ·(U₁⊗…⊗Uₙ)†."""
    if 2 ** len(unitaries) != rho.dim:
        raise ValueError(f"{len(unitaries)} local unitaries do not act on dimension {rho.dim}")
    u = local_operator(unitaries)
    image = u @ rho.matrix @ u.conj().T
    return DensityMatrix.from_array((image + image.conj().T) / 2)
