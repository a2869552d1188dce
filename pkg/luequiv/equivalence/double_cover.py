"""The double cover SU(2) → SO(3) acting on Bloch coefficients."""

import numpy as np
import numpy.typing as npt

from luequiv.bloch.pauli import PAULIS
from luequiv.core.linalg import is_special_orthogonal

type SU2 = npt.NDArray[np.complex128]


def is_special_unitary(u: npt.ArrayLike, tol: float = 1e-10) -> bool:
    matrix = np.asarray(u, dtype=np.complex128)
    if matrix.shape != (2, 2):
        return False
    return bool(
        np.allclose(matrix.conj().T @ matrix, np.eye(2), rtol=0.0, atol=tol)
        and abs(np.linalg.det(matrix) - 1.0) <= tol
    )


def su2_to_so3(u: npt.ArrayLike, tol: float = 1e-10) -> npt.NDArray[np.float64]:
    """
    Rotation O with U·σ_k·U† = Σ_l O_lk·σ_l.

    O acts on Bloch vectors from the left: the state UρU† has Bloch vector O·r when ρ
    has r. With this orientation su2_to_so3(U·V) = su2_to_so3(U)·su2_to_so3(V).
    The transpose O_kl would act on row vectors and reverse that product, so it is
    not used.
    """
    matrix = np.asarray(u, dtype=np.complex128)
    if not is_special_unitary(matrix, tol):
        raise ValueError("su2_to_so3 requires a 2×2 unitary with determinant 1")
    rotated = matrix @ PAULIS @ matrix.conj().T
    return 0.5 * np.einsum("lab,kba->lk", PAULIS, rotated).real


def quaternion_to_su2(q: npt.ArrayLike) -> SU2:
    """U = w·I − i(x·σx + y·σy + z·σz) for a unit quaternion (w, x, y, z)."""
    w, x, y, z = np.asarray(q, dtype=np.float64)
    return np.array(
        [[w - 1j * z, -1j * x - y], [-1j * x + y, w + 1j * z]],
        dtype=np.complex128,
    )


def rotation_to_quaternion(o: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Unit quaternion of a rotation matrix, sign fixed so the first nonzero component is positive."""
    trace = float(np.trace(o))
    diagonal = np.diag(o)
    q = np.zeros(4)
    # branch on the largest of (trace, o00, o11, o22) to keep the divisor away from zero
    pivot = int(np.argmax([trace, *diagonal]))
    if pivot == 0:
        q[0] = np.sqrt(1.0 + trace) / 2
        q[1] = (o[2, 1] - o[1, 2]) / (4 * q[0])
        q[2] = (o[0, 2] - o[2, 0]) / (4 * q[0])
        q[3] = (o[1, 0] - o[0, 1]) / (4 * q[0])
    elif pivot == 1:
        q[1] = np.sqrt(1.0 + o[0, 0] - o[1, 1] - o[2, 2]) / 2
        q[0] = (o[2, 1] - o[1, 2]) / (4 * q[1])
        q[2] = (o[1, 0] + o[0, 1]) / (4 * q[1])
        q[3] = (o[0, 2] + o[2, 0]) / (4 * q[1])
    elif pivot == 2:
        q[2] = np.sqrt(1.0 - o[0, 0] + o[1, 1] - o[2, 2]) / 2
        q[0] = (o[0, 2] - o[2, 0]) / (4 * q[2])
        q[1] = (o[1, 0] + o[0, 1]) / (4 * q[2])
        q[3] = (o[2, 1] + o[1, 2]) / (4 * q[2])
    else:
        q[3] = np.sqrt(1.0 - o[0, 0] - o[1, 1] + o[2, 2]) / 2
        q[0] = (o[1, 0] - o[0, 1]) / (4 * q[3])
        q[1] = (o[0, 2] + o[2, 0]) / (4 * q[3])
        q[2] = (o[2, 1] + o[1, 2]) / (4 * q[3])
    q /= np.linalg.norm(q)
    leading = next(component for component in q if abs(component) > 1e-12)
    return q if leading > 0 else -q


def so3_to_su2(o: npt.ArrayLike, tol: float = 1e-8) -> SU2:
    """One of the two SU(2) elements covering the rotation `o`, chosen deterministically."""
    rotation = np.asarray(o, dtype=np.float64)
    if not is_special_orthogonal(rotation, tol):
        raise ValueError("so3_to_su2 requires an orthogonal 3×3 matrix with determinant +1")
    return quaternion_to_su2(rotation_to_quaternion(rotation))


def conjugation_residual(u: SU2, o: npt.NDArray[np.float64]) -> float:
    """max_k ‖U·σ_k·U† − Σ_l O_lk·σ_l‖_F."""
    rotated = u @ PAULIS @ u.conj().T
    expected = np.einsum("lk,lab->kab", o, PAULIS)
    return float(np.max(np.linalg.norm(rotated - expected, axis=(1, 2))))
