"""Small fixed-size numerics shared by every other module.

Everything here is a pure function of its arguments. Rotations and tensors are plain
float64 numpy arrays; vectors are columns acted on from the left.
"""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from luequiv.config import settings
from luequiv.core.models import RMat3, RVec3, Svd3Result

LEVI_CIVITA = np.zeros((3, 3, 3))
LEVI_CIVITA[0, 1, 2] = LEVI_CIVITA[1, 2, 0] = LEVI_CIVITA[2, 0, 1] = 1.0
LEVI_CIVITA[0, 2, 1] = LEVI_CIVITA[2, 1, 0] = LEVI_CIVITA[1, 0, 2] = -1.0


def _as_mat3(m: npt.ArrayLike) -> RMat3:
    matrix = np.asarray(m, dtype=np.float64)
    if matrix.shape != (3, 3):
        raise ValueError(f"Expected a 3×3 matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix entries must be finite")
    return matrix


def svd3(m: npt.ArrayLike) -> Svd3Result:
    """
    Singular value decomposition of a real 3×3 matrix.

    Singular values come back sorted descending; ties keep the column order LAPACK
    produced, so the result is deterministic for a fixed input. The orthogonal factors
    are returned as computed; use `orient_svd3` to bring them into SO(3).
    """
    matrix = _as_mat3(m)
    u, s, vt = np.linalg.svd(matrix)
    order = np.argsort(-s, kind="stable")
    return Svd3Result(left=u[:, order], right=vt.T[:, order], sigma=s[order])


def orient_svd3(result: Svd3Result, zero_tol: float = 1e-14) -> Svd3Result:
    """
    Flip singular-vector signs so that det(left) = det(right) = +1 where possible.

    Flipping the third column of both factors leaves the product unchanged. A lone flip
    of the right factor is only made when the third singular value is at most
    `zero_tol`, which changes the reconstruction by at most 2·sigma₃. When the input
    has negative determinant and no zero singular value, det(right) stays −1.
    """
    left = result.left.copy()
    right = result.right.copy()
    if np.linalg.det(left) < 0:
        left[:, 2] *= -1.0
        right[:, 2] *= -1.0
    if np.linalg.det(right) < 0 and result.sigma[2] <= zero_tol * max(1.0, result.sigma[0]):
        right[:, 2] *= -1.0
    return Svd3Result(left=left, right=right, sigma=result.sigma.copy())


def numeric_rank(rows: npt.ArrayLike, tol_rel: float = settings.RANK_TOL) -> int:
    """Count singular values above tol_rel · max(1, largest singular value)."""
    matrix = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    threshold = tol_rel * max(1.0, float(s[0]))
    return int(np.count_nonzero(s > threshold))


def rank_tol(vectors: Sequence[RVec3], tol_rel: float = settings.RANK_TOL) -> int:
    """Dimension of the span of a nonempty list of 3-vectors."""
    if len(vectors) == 0:
        raise ValueError("rank_tol needs at least one vector")
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    return numeric_rank(np.vstack(vectors), tol_rel)


def triple(a: RVec3, b: RVec3, c: RVec3) -> float:
    """Scalar triple product ⟨a, b × c⟩."""
    return float(np.dot(a, np.cross(b, c)))


def char_poly3(m: npt.ArrayLike) -> tuple[float, float, float]:
    """
    Coefficients (c2, c1, c0) with m³ = c2·m² + c1·m + c0·I for a symmetric 3×3 matrix.

    c2 = tr m, c1 = −(tr²m − tr m²)/2, c0 = det m.
    """
    matrix = _as_mat3(m)
    scale = max(1.0, float(np.linalg.norm(matrix)))
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=1e-10 * scale):
        raise ValueError("char_poly3 requires a symmetric matrix")
    trace = float(np.trace(matrix))
    trace_sq = float(np.trace(matrix @ matrix))
    return trace, -(trace**2 - trace_sq) / 2.0, float(np.linalg.det(matrix))


def cofactor3(m: npt.ArrayLike) -> RMat3:
    """Cofactor matrix, cof(m)_il = ½ ε_ijk ε_lmn m_jm m_kn."""
    matrix = _as_mat3(m)
    return 0.5 * np.einsum("ijk,lmn,jm,kn->il", LEVI_CIVITA, LEVI_CIVITA, matrix, matrix)


def procrustes(
    xs: npt.ArrayLike,
    ys: npt.ArrayLike,
    tol_rel: float = settings.RANK_TOL,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64] | None]:
    """
    Orthogonal map Q minimizing ‖Q·xs − ys‖_F, columns of xs and ys paired.

    Works in any dimension d (xs, ys are d×n). When xs does not span the space, the
    second return value is the variant of Q with the opposite determinant that acts
    identically on span(xs); otherwise it is None.
    """
    source = np.asarray(xs, dtype=np.float64)
    target = np.asarray(ys, dtype=np.float64)
    if source.shape != target.shape:
        raise ValueError(f"Shape mismatch {source.shape} vs {target.shape}")
    dim = source.shape[0]
    u, _, vt = np.linalg.svd(target @ source.T)
    q = u @ vt
    if numeric_rank(source.T, tol_rel) == dim:
        return q, None
    flip = np.ones(dim)
    flip[-1] = -1.0
    return q, u @ np.diag(flip) @ vt


def is_special_orthogonal(o: npt.ArrayLike, tol: float = 1e-8) -> bool:
    matrix = np.asarray(o, dtype=np.float64)
    if matrix.shape != (3, 3):
        return False
    return bool(
        np.allclose(matrix.T @ matrix, np.eye(3), rtol=0.0, atol=tol)
        and abs(np.linalg.det(matrix) - 1.0) <= tol
    )
