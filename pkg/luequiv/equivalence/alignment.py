"""Orthogonal alignments between corresponding vector lists and SVD frames."""

import itertools
import logging
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from luequiv.config import settings
from luequiv.core.linalg import orient_svd3, procrustes, svd3
from luequiv.core.models import RMat3, RVec3

logger = logging.getLogger(__name__)

type Frames = tuple[RMat3, RMat3, RVec3]


def align_gram(
    xs: Sequence[RVec3],
    ys: Sequence[RVec3],
    want_special: bool,
    tol: float = settings.ALIGN_TOL,
    tol_rel: float = settings.RANK_TOL,
) -> RMat3 | None:
    """
    Orthogonal O with O·xsᵢ = ysᵢ for every i, or None when no such O exists.

    Such an O exists iff the two Gram matrices agree. When `want_special` is set and
    xs does not span R³, the unused freedom is spent on making det O = +1; when xs
    spans R³ the determinant is fixed by the data and None is returned if it is −1.
    """
    if len(xs) != len(ys):
        raise ValueError(f"align_gram needs lists of equal length, got {len(xs)} and {len(ys)}")
    if not xs:
        return np.eye(3)
    source = np.column_stack(xs)
    target = np.column_stack(ys)
    scale = max(1.0, float(np.max(np.abs(source.T @ source))))
    gram_gap = float(np.max(np.abs(source.T @ source - target.T @ target)))
    if gram_gap > tol * scale:
        logger.debug("Gram matrices differ by %.3e", gram_gap)
        return None

    q, flipped = procrustes(source, target, tol_rel)
    if want_special and np.linalg.det(q) < 0:
        if flipped is None:
            return None
        q = flipped

    misfit = float(np.max(np.linalg.norm(q @ source - target, axis=0)))
    logger.debug("Alignment misfit %.3e over %d vectors", misfit, len(xs))
    if misfit > tol * np.sqrt(scale):
        return None
    return q


def signed_frames(t12: RMat3, zero_tol: float = 1e-14) -> Frames:
    """
    Frames P1 ∈ SO(3) and P2 with P1·T12·P2ᵗ = diag(t), t descending and nonnegative.

    det P2 equals the sign of det T12, or +1 when the smallest singular value is zero.
    """
    result = orient_svd3(svd3(t12), zero_tol)
    return result.left.T, result.right.T, result.sigma


def match_frame_signs(
    frames: Frames, frames_hat: Frames, zero_tol: float = settings.DEGENERACY_TOL
) -> tuple[Frames, Frames] | None:
    """
    Make det P2 agree between two frame triples.

    Only possible without spoiling the diagonal form when the third singular value
    vanishes, in which case the third row of the negative frame is flipped.
    """
    p1, p2, t = frames
    p1_hat, p2_hat, t_hat = frames_hat
    if np.linalg.det(p2) * np.linalg.det(p2_hat) > 0:
        return frames, frames_hat
    if max(t[2], t_hat[2]) > zero_tol:
        return None
    if np.linalg.det(p2) < 0:
        p2 = p2.copy()
        p2[2] *= -1.0
    else:
        p2_hat = p2_hat.copy()
        p2_hat[2] *= -1.0
    return (p1, p2, t), (p1_hat, p2_hat, t_hat)


def lemma1_align(
    t12: RMat3, t12_hat: RMat3, tol: float = settings.ALIGN_TOL
) -> tuple[RMat3, RMat3] | None:
    """
    Rotations O1, O2 with T̂12 = O1·T12·O2ᵗ when the two matrices share singular values
    and determinant sign; None otherwise.
    """
    matched = match_frame_signs(signed_frames(t12), signed_frames(t12_hat))
    if matched is None:
        return None
    (p1, p2, t), (p1_hat, p2_hat, t_hat) = matched
    if float(np.max(np.abs(t - t_hat))) > tol:
        return None
    o1 = p1_hat.T @ p1
    o2 = p2_hat.T @ p2
    if float(np.linalg.norm(t12_hat - o1 @ t12 @ o2.T)) > tol * max(1.0, float(np.linalg.norm(t12))):
        return None
    return o1, o2


def degenerate_blocks(
    t: RVec3, degeneracy_tol: float = settings.DEGENERACY_TOL
) -> tuple[list[list[int]], list[int]]:
    """
    Split indices of descending singular values into blocks of equal nonzero values
    and the block of zero values.
    """
    zero = [i for i in range(3) if t[i] <= degeneracy_tol]
    nonzero = [i for i in range(3) if t[i] > degeneracy_tol]
    blocks: list[list[int]] = []
    gap = degeneracy_tol * max(1.0, float(t[0]))
    for i in nonzero:
        if blocks and abs(t[blocks[-1][-1]] - t[i]) <= gap:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return blocks, zero


def _block_variants(
    xs: list[RVec3], ys: list[RVec3], block: list[int], tol_rel: float
) -> list[npt.NDArray[np.float64]]:
    source = np.column_stack([x[block] for x in xs])
    target = np.column_stack([y[block] for y in ys])
    q, flipped = procrustes(source, target, tol_rel)
    return [q] if flipped is None else [q, flipped]


def _embed(blocks: Sequence[tuple[list[int], npt.NDArray[np.float64]]]) -> RMat3:
    r = np.zeros((3, 3))
    for block, q in blocks:
        r[np.ix_(block, block)] = q
    return r


def stabilizer_align(
    t: RVec3,
    p1t1: RVec3,
    p1t1_hat: RVec3,
    p2t2: RVec3,
    p2t2_hat: RVec3,
    inv_I_pair: tuple[float, float],
    tol: float = settings.ALIGN_TOL,
    degeneracy_tol: float = settings.DEGENERACY_TOL,
    tol_rel: float = settings.RANK_TOL,
) -> tuple[RMat3, RMat3] | None:
    """
    Rotations R1, R2 with R1·diag(t)·R2ᵗ = diag(t), R1·p1t1 = p1t1_hat, R2·p2t2 = p2t2_hat.

    Rotations fixing diag(t) this way are block diagonal: one common orthogonal block
    per group of equal nonzero singular values and independent blocks R1_Z, R2_Z on
    the zero singular values. Each block is fitted by Procrustes, keeping both
    determinant variants when the data leaves a reflection free, and the first
    combination with det R1 = det R2 = +1 that reproduces the data is returned.
    R1 = R2 whenever no singular value vanishes.

    How the block structure covers the singular-value patterns:

    - t distinct and nonzero: three 1×1 blocks, i.e. the sign matrices diag(±1, ±1, ±1).
      With t3 = 0 the last block splits into separate signs for R1 and R2, and the
      equal I pair fixes their product.
    - t1 = t2 ≠ t3: a common 2×2 block plus a sign. When t3 = 0 that sign is again
      separate for R1 and R2.
    - t1 = t2 = t3 ≠ 0: one common 3×3 block.
    - t = 0: independent 3×3 blocks, so R1 and R2 each align a single vector.

    When t1 = t2 ≠ t3 and the common 2×2 block is pinned to a reflection with no zero
    coordinate to absorb it, no candidate has determinant +1. The result is None, and
    decide2 reports Inconclusive.
    """
    if abs(inv_I_pair[0] - inv_I_pair[1]) > tol:
        return None

    blocks, zero = degenerate_blocks(t, degeneracy_tol)
    coupled_choices = [
        [(block, q) for q in _block_variants([p1t1, p2t2], [p1t1_hat, p2t2_hat], block, tol_rel)]
        for block in blocks
    ]
    if zero:
        first_choices = [(zero, q) for q in _block_variants([p1t1], [p1t1_hat], zero, tol_rel)]
        second_choices = [(zero, q) for q in _block_variants([p2t2], [p2t2_hat], zero, tol_rel)]
    else:
        first_choices = second_choices = [([], np.zeros((0, 0)))]

    d = np.diag(t)
    # blocks merge values up to degeneracy_tol apart, so diag(t) is only fixed up to that spread
    d_tol = tol + 2.0 * degeneracy_tol * max(1.0, float(t[0]))
    for coupled in itertools.product(*coupled_choices):
        for first_zero, second_zero in itertools.product(first_choices, second_choices):
            r1 = _embed([*coupled, first_zero])
            r2 = _embed([*coupled, second_zero])
            if np.linalg.det(r1) < 0 or np.linalg.det(r2) < 0:
                continue
            misfit = max(
                float(np.linalg.norm(r1 @ p1t1 - p1t1_hat)),
                float(np.linalg.norm(r2 @ p2t2 - p2t2_hat)),
            )
            d_misfit = float(np.linalg.norm(r1 @ d @ r2.T - d))
            if misfit <= tol and d_misfit <= d_tol:
                return r1, r2
            logger.debug(
                "Stabilizer candidate rejected (vector misfit %.3e, diagonal misfit %.3e)",
                misfit,
                d_misfit,
            )
    return None
