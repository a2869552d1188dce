import logging
from collections.abc import Sequence

import numpy as np

from luequiv.bloch.models import BlochTensor3, DensityMatrix
from luequiv.bloch.pauli import conjugate, transform_bloch3, unfold3
from luequiv.config import settings
from luequiv.core.models import RMat3, RVec3
from luequiv.equivalence.alignment import align_gram
from luequiv.equivalence.double_cover import so3_to_su2
from luequiv.equivalence.models import CoverageRecord, LocalUnitaryWitness, LpsRecord, Verdict
from luequiv.families.builder import build_families3
from luequiv.families.models import VectorFamily
from luequiv.invariants.compare import fingerprints_equal
from luequiv.invariants.fingerprint import fingerprint3_from_families, lps_invariants

logger = logging.getLogger(__name__)

TENSOR_NAMES3 = ("T1", "T2", "T3", "T12", "T13", "T23", "T123")


def verify_witness3(
    a: BlochTensor3,
    b: BlochTensor3,
    rotations: Sequence[RMat3],
    rho_a: DensityMatrix | None = None,
    rho_b: DensityMatrix | None = None,
) -> LocalUnitaryWitness:
    """Residuals of all seven tensor relations and the SU(2) lifts of the rotations."""
    image = transform_bloch3(a, rotations)
    tensor_residuals = {
        name: float(np.linalg.norm(expected - actual))
        for name, expected, actual in zip(TENSOR_NAMES3, b.arrays(), image.arrays(), strict=True)
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


def _third_rotation(
    k: int,
    a: BlochTensor3,
    b: BlochTensor3,
    family: VectorFamily,
    family_hat: VectorFamily,
    known: dict[int, RMat3],
) -> RMat3 | None:
    """
    Rotation of the deficient qubit k from its own family together with the relations
    O_k·T_ki = T̂_ki·O_i for both other qubits and O_k·T_{k|ij} = T̂_{k|ij}·(O_i ⊗ O_j).
    """
    xs: list[RVec3] = list(family.members)
    ys: list[RVec3] = list(family_hat.members)
    for i, o_i in known.items():
        pair, pair_hat = a.pair(k, i), b.pair(k, i) @ o_i
        xs.extend(pair.T)
        ys.extend(pair_hat.T)
    i, j = sorted(known)
    unfolding = unfold3(a).unfolding(k)
    unfolding_hat = unfold3(b).unfolding(k) @ np.kron(known[i], known[j])
    xs.extend(unfolding.T)
    ys.extend(unfolding_hat.T)
    return align_gram(xs, ys, want_special=True)


def decide3(
    a: BlochTensor3,
    b: BlochTensor3,
    depth: int = settings.FAMILY_DEPTH,
    tol: float = settings.COMPARISON_TOL,
    rho_a: DensityMatrix | None = None,
    rho_b: DensityMatrix | None = None,
    cap: int = settings.FAMILY_CAP,
) -> Verdict:
    """
    Sufficient LU-equivalence test for three-qubit states.

    Decides Equivalent when the fingerprints agree, at least two families span R³ and
    the resulting rotations reproduce all seven tensors; different fingerprints mean
    NotEquivalent. Everything else is Inconclusive.
    """
    if a.same_as(b):
        witness = verify_witness3(a, b, [np.eye(3)] * 3, rho_a, rho_b)
        return Verdict.equivalent(witness, path="identical")

    families = build_families3(a, depth=depth, cap=cap)
    families_hat = build_families3(b, depth=depth, cap=cap)
    fa = fingerprint3_from_families(a, families, depth)
    fb = fingerprint3_from_families(b, families_hat, depth)
    same, certificate = fingerprints_equal(fa, fb, tol)
    if not same and certificate is not None:
        return Verdict.not_equivalent(certificate)

    full = [label for label, dim in zip((1, 2, 3), fa.dims, strict=True) if dim == 3]
    if len(full) < 2:
        reason = f"fewer than two of the family dimensions {fa.dims} equal 3"
        logger.warning("Equal fingerprints but %s", reason)
        return Verdict.inconclusive(reason, path="full_families")

    rotations: dict[int, RMat3] = {}
    for label in full:
        o = align_gram(
            families[label - 1].members, families_hat[label - 1].members, want_special=True
        )
        if o is None:
            reason = f"no rotation aligns family S{label} with its counterpart"
            logger.warning("Equal fingerprints but %s", reason)
            return Verdict.inconclusive(reason, path="full_families")
        rotations[label] = o

    for k in (1, 2, 3):
        if k in rotations:
            continue
        logger.info("Deriving the rotation of qubit %d from the other two", k)
        o = _third_rotation(k, a, b, families[k - 1], families_hat[k - 1], dict(rotations))
        if o is None:
            reason = f"no rotation of qubit {k} is consistent with the correlations"
            logger.warning("Equal fingerprints but %s", reason)
            return Verdict.inconclusive(reason, path="full_families")
        rotations[k] = o

    witness = verify_witness3(a, b, [rotations[1], rotations[2], rotations[3]], rho_a, rho_b)
    witness_tol = tol * settings.WITNESS_TOL_FACTOR
    logger.debug("Witness residuals %s", witness.tensor_residuals)
    if witness.residual > witness_tol or (
        witness.density_residual is not None and witness.density_residual > settings.ALIGN_TOL
    ):
        reason = (
            f"witness residual {witness.residual:.3e} (density {witness.density_residual}) "
            f"exceeds {witness_tol:.1e}"
        )
        logger.warning("Equal fingerprints but witness verification failed: %s", reason)
        return Verdict.inconclusive(reason, path="full_families")
    return Verdict.equivalent(witness, path="full_families")


def lps_check(b: BlochTensor3, tol: float = settings.LPS_TOL) -> LpsRecord:
    """
    Eigen-data of 𝒯ᵢ and det ΛᵢΘᵢ = Vandermonde(tᵢ₁, tᵢ₂, tᵢ₃)·aᵢ₁aᵢ₂aᵢ₃.

    Eigenvalues are sorted descending; each eigenvector is signed so its
    largest-magnitude entry is positive, and forms a row of Pᵢ.
    """
    unfoldings = unfold3(b)
    eigenvalues = np.zeros((3, 3))
    rotated_mean = np.zeros((3, 3))
    determinants = np.zeros(3)
    for i in (1, 2, 3):
        values, vectors = np.linalg.eigh(unfoldings.gram(i))
        values, vectors = values[::-1], vectors[:, ::-1]
        for column in range(3):
            pivot = int(np.argmax(np.abs(vectors[:, column])))
            if vectors[pivot, column] < 0:
                vectors[:, column] *= -1.0
        p = vectors.T
        mean = p @ b.local(i)
        t1, t2, t3 = values
        eigenvalues[i - 1] = values
        rotated_mean[i - 1] = mean
        determinants[i - 1] = (t2 - t1) * (t3 - t1) * (t3 - t2) * float(np.prod(mean))
    return LpsRecord(
        eigenvalues=eigenvalues,
        rotated_mean=rotated_mean,
        det_lambda_theta=determinants,
        applicable=bool(np.all(np.abs(determinants) > tol)),
    )


def coverage_compare(
    b: BlochTensor3,
    depth: int = settings.FAMILY_DEPTH,
    tol: float = settings.LPS_TOL,
) -> CoverageRecord:
    s1, s2, s3 = build_families3(b, depth=depth)
    dims = (s1.dim, s2.dim, s3.dim)
    return CoverageRecord(
        dims=dims,
        theorem3_applicable=sum(dim == 3 for dim in dims) >= 2,
        lps_applicable=lps_check(b, tol).applicable,
    )


def lps_equivalent(a: BlochTensor3, b: BlochTensor3, tol: float = settings.COMPARISON_TOL) -> bool:
    """Whether tr(𝒯ᵢʳ) and Tᵢᵗ·𝒯ᵢ^(r−1)·Tᵢ agree for all i, r."""
    traces, quad = lps_invariants(a)
    traces_hat, quad_hat = lps_invariants(b)
    return bool(
        np.all(np.abs(traces - traces_hat) <= tol) and np.all(np.abs(quad - quad_hat) <= tol)
    )
