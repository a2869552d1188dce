import logging
from collections.abc import Sequence

import numpy as np

from luequiv.bloch.models import BlochTensor2, DensityMatrix
from luequiv.bloch.pauli import conjugate, transform_bloch2
from luequiv.config import settings
from luequiv.core.models import RMat3
from luequiv.equivalence.alignment import (
    align_gram,
    match_frame_signs,
    signed_frames,
    stabilizer_align,
)
from luequiv.equivalence.double_cover import so3_to_su2
from luequiv.equivalence.models import LocalUnitaryWitness, Verdict
from luequiv.families.builder import build_families2
from luequiv.invariants.compare import fingerprints_equal
from luequiv.invariants.fingerprint import decision_fields2, fingerprint2

logger = logging.getLogger(__name__)


def verify_witness2(
    a: BlochTensor2,
    b: BlochTensor2,
    rotations: Sequence[RMat3],
    rho_a: DensityMatrix | None = None,
    rho_b: DensityMatrix | None = None,
) -> LocalUnitaryWitness:
    """Residuals of T̂₁ = O₁T₁, T̂₂ = O₂T₂, T̂₁₂ = O₁T₁₂O₂ᵗ and the SU(2) lifts of the rotations."""
    image = transform_bloch2(a, rotations)
    tensor_residuals = {
        name: float(np.linalg.norm(expected - actual))
        for name, expected, actual in zip(
            ("T1", "T2", "T12"), b.arrays(), image.arrays(), strict=True
        )
    }
    unitaries = [so3_to_su2(o) for o in rotations]
    density_residual = None
    if rho_a is not None and rho_b is not None:
        density_residual = float(np.linalg.norm(rho_b.matrix - conjugate(rho_a, unitaries).matrix))
    return LocalUnitaryWitness(
        rotations=list(rotations),
        unitaries=unitaries,
        residual=max(tensor_residuals.values()),
        tensor_residuals=tensor_residuals,
        density_residual=density_residual,
    )


def _full_family_rotations(
    a: BlochTensor2, b: BlochTensor2, dims: tuple[int, int]
) -> tuple[RMat3, RMat3] | str:
    """
    Align the full-dimensional family first, then pin the partner rotation through
    O₂·T₁₂ᵗ = T̂₁₂ᵗ·O₁ (or O₁·T₁₂ = T̂₁₂·O₂) together with its own family.
    """
    s1, s2 = build_families2(a)
    s1_hat, s2_hat = build_families2(b)
    if dims[0] == 3:
        primary, primary_hat, secondary, secondary_hat = s1, s1_hat, s2, s2_hat
        coupling, coupling_hat = a.T12.T, b.T12.T
    else:
        primary, primary_hat, secondary, secondary_hat = s2, s2_hat, s1, s1_hat
        coupling, coupling_hat = a.T12, b.T12

    o_primary = align_gram(primary.members, primary_hat.members, want_special=True, tol=settings.ALIGN_TOL)
    if o_primary is None:
        return f"no rotation of S{primary.label} matches its counterpart within {settings.ALIGN_TOL:.0e}"

    xs = [coupling @ v for v in primary.members] + list(secondary.members)
    ys = [coupling_hat @ (o_primary @ v) for v in primary.members] + list(secondary_hat.members)
    o_secondary = align_gram(xs, ys, want_special=True, tol=settings.ALIGN_TOL)
    if o_secondary is None:
        return f"no rotation of S{secondary.label} matches its partner relation"
    logger.info("Witness built on the full-dimensional family S%d", primary.label)
    if dims[0] == 3:
        return o_primary, o_secondary
    return o_secondary, o_primary


def _stabilizer_rotations(
    a: BlochTensor2, b: BlochTensor2, inv_pair: tuple[float, float]
) -> tuple[RMat3, RMat3] | str:
    """O_i = P̂ᵢᵗ·Rᵢ·Pᵢ with Pᵢ the singular frames and Rᵢ fixing diag(t)."""
    matched = match_frame_signs(signed_frames(a.T12), signed_frames(b.T12))
    if matched is None:
        return "singular frames of T12 have opposite orientation and no zero singular value"
    (p1, p2, t), (p1_hat, p2_hat, t_hat) = matched
    if float(np.max(np.abs(t - t_hat))) > settings.ALIGN_TOL:
        return f"singular values of T12 differ by {float(np.max(np.abs(t - t_hat))):.3e}"
    pair = stabilizer_align(t, p1 @ a.T1, p1_hat @ b.T1, p2 @ a.T2, p2_hat @ b.T2, inv_pair)
    if pair is None:
        return "no block rotation fixing diag(t) maps the rotated local vectors onto each other"
    r1, r2 = pair
    logger.info("Witness built from the stabilizer of diag(%s)", np.array2string(t, precision=6))
    return p1_hat.T @ r1 @ p1, p2_hat.T @ r2 @ p2


def decide2(
    a: BlochTensor2,
    b: BlochTensor2,
    tol: float = settings.COMPARISON_TOL,
    rho_a: DensityMatrix | None = None,
    rho_b: DensityMatrix | None = None,
) -> Verdict:
    """
    Decide whether two two-qubit states are LU equivalent.

    When some family spans R³ the nine invariants of L and the triple products decide;
    otherwise L together with tr(T₁₂T₁₂ᵗ)^α, det T₁₂ and I. Equal invariants yield a
    witness that must reproduce every tensor within WITNESS_TOL_FACTOR·tol, else the
    verdict is Inconclusive.
    """
    if a.same_as(b):
        witness = verify_witness2(a, b, [np.eye(3), np.eye(3)], rho_a, rho_b)
        return Verdict.equivalent(witness, path="identical")

    fa, fb = fingerprint2(a), fingerprint2(b)
    same_dims, certificate = fingerprints_equal(fa, fb, tol, fields=["dims"])
    if not same_dims and certificate is not None:
        return Verdict.not_equivalent(certificate)

    same, certificate = fingerprints_equal(fa, fb, tol, fields=decision_fields2(fa.dims))
    if not same and certificate is not None:
        return Verdict.not_equivalent(certificate)

    if max(fa.dims) == 3:
        path = "full_family"
        found = _full_family_rotations(a, b, fa.dims)
    else:
        path = "stabilizer"
        found = _stabilizer_rotations(a, b, (fa.inv_I, fb.inv_I))

    if isinstance(found, str):
        logger.warning("Equal invariants but no witness on the %s path: %s", path, found)
        return Verdict.inconclusive(found, path=path)

    witness = verify_witness2(a, b, found, rho_a, rho_b)
    witness_tol = tol * settings.WITNESS_TOL_FACTOR
    logger.debug("Witness residuals %s", witness.tensor_residuals)
    if witness.residual > witness_tol:
        reason = f"witness residual {witness.residual:.3e} exceeds {witness_tol:.1e}"
        logger.warning("Equal invariants but witness verification failed: %s", reason)
        return Verdict.inconclusive(reason, path=path)
    if witness.density_residual is not None and witness.density_residual > settings.ALIGN_TOL:
        reason = f"density residual {witness.density_residual:.3e} exceeds {settings.ALIGN_TOL:.1e}"
        logger.warning("Equal invariants but witness verification failed: %s", reason)
        return Verdict.inconclusive(reason, path=path)
    return Verdict.equivalent(witness, path=path)
