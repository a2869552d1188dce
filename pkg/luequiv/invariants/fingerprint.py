import logging

import numpy as np
import numpy.typing as npt

from luequiv.bloch.models import BlochTensor2, BlochTensor3
from luequiv.bloch.pauli import unfold3
from luequiv.config import settings
from luequiv.core.linalg import LEVI_CIVITA, triple
from luequiv.families.builder import build_families2, build_families3, pick_basis
from luequiv.families.models import VectorFamily
from luequiv.invariants.models import Fingerprint2, Fingerprint3

logger = logging.getLogger(__name__)

# number of terms needed of p_k = T1ᵗAᵏT1, q_k = T2ᵗBᵏT2, r_k = T1ᵗAᵏT12T2
_SEQUENCE_LENGTH = 6


def invariant_I(b: BlochTensor2) -> float:
    return float(np.einsum("ijk,lmn,i,l,jm,kn->", LEVI_CIVITA, LEVI_CIVITA, b.T1, b.T2, b.T12, b.T12))


def _basis_triple(family: VectorFamily, tol_rel: float) -> tuple[tuple[int, int, int] | None, float | None]:
    basis = pick_basis(family, tol_rel)
    if basis is None:
        return None, None
    r, s, t = basis
    return basis, triple(family.members[r - 1], family.members[s - 1], family.members[t - 1])


def fingerprint2(b: BlochTensor2, tol_rel: float = settings.RANK_TOL) -> Fingerprint2:
    s1, s2 = build_families2(b, tol_rel)
    mu, nu = s1.members, s2.members
    basis_mu, triple_mu = _basis_triple(s1, tol_rel)
    basis_nu, triple_nu = _basis_triple(s2, tol_rel)
    a = b.T12 @ b.T12.T
    return Fingerprint2(
        dims=(s1.dim, s2.dim),
        L=[
            float(mu[0] @ mu[0]),
            float(mu[1] @ mu[1]),
            float(mu[2] @ mu[2]),
            float(nu[0] @ nu[0]),
            float(nu[1] @ nu[1]),
            float(nu[2] @ nu[2]),
            float(mu[0] @ mu[1]),
            float(mu[0] @ mu[3]),
            float(mu[0] @ mu[5]),
        ],
        triple_mu=triple_mu,
        triple_nu=triple_nu,
        basis_mu=basis_mu,
        basis_nu=basis_nu,
        tr_alpha=(float(np.trace(a)), float(np.trace(a @ a))),
        det_T12=float(np.linalg.det(b.T12)),
        inv_I=invariant_I(b),
    )


def _extend(start: list[float], c2: float, c1: float, c0: float) -> list[float]:
    values = list(start)
    while len(values) < _SEQUENCE_LENGTH:
        values.append(c2 * values[-1] + c1 * values[-2] + c0 * values[-3])
    return values


def _family_gram(odd: list[float], even: list[float], mixed: list[float]) -> npt.NDArray[np.float64]:
    """Gram of members x₁..x₆ given ⟨x₂ₐ₊₁,x₂ᵦ₊₁⟩ = odd[a+b], ⟨x₂ₐ₊₂,x₂ᵦ₊₂⟩ = even[a+b], ⟨x₂ₐ₊₁,x₂ᵦ₊₂⟩ = mixed[a+b]."""
    gram = np.zeros((6, 6))
    for m in range(6):
        for n in range(6):
            a, c = m // 2, n // 2
            if m % 2 == 0 and n % 2 == 0:
                gram[m, n] = odd[a + c]
            elif m % 2 == 1 and n % 2 == 1:
                gram[m, n] = even[a + c]
            else:
                gram[m, n] = mixed[a + c]
    return gram


def reconstruct_grams2(fp: Fingerprint2) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Full 6×6 Gram matrices of S1 and S2 from L, tr_alpha and det_T12 alone.

    A = T12·T12ᵗ and B = T12ᵗ·T12 share the characteristic polynomial
    λ³ − c2·λ² − c1·λ − c0 with c2 = tr A, c1 = −(tr²A − tr A²)/2 and c0 = det²T12,
    so every sequence xₖ = uᵗAᵏw obeys xₖ₊₃ = c2·xₖ₊₂ + c1·xₖ₊₁ + c0·xₖ.
    """
    trace, trace_sq = fp.tr_alpha
    c2, c1, c0 = trace, -(trace**2 - trace_sq) / 2.0, fp.det_T12**2
    mu11, mu22, mu33, nu11, nu22, nu33, r0, r1, r2 = fp.L
    p = _extend([mu11, nu22, mu33], c2, c1, c0)
    q = _extend([nu11, mu22, nu33], c2, c1, c0)
    r = _extend([r0, r1, r2], c2, c1, c0)
    gram_mu = _family_gram(odd=p, even=q[1:], mixed=r)
    gram_nu = _family_gram(odd=q, even=p[1:], mixed=r)
    return gram_mu, gram_nu


def decision_fields2(dims: tuple[int, int]) -> list[str]:
    """Fingerprint2 fields that decide equivalence once the dimensions agree."""
    if max(dims) == 3:
        fields = ["L"]
        if dims[0] == 3:
            fields.append("triple_mu")
        if dims[1] == 3:
            fields.append("triple_nu")
        return fields
    return ["L", "tr_alpha", "det_T12", "inv_I"]


def invariant_count2(dims: tuple[int, int]) -> int:
    """Number of real invariants compared for states with these family dimensions."""
    sizes = {"L": 9, "triple_mu": 1, "triple_nu": 1, "tr_alpha": 2, "det_T12": 1, "inv_I": 1}
    return sum(sizes[field] for field in decision_fields2(dims))


def lps_invariants(b: BlochTensor3) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Entry (i, r) of the two tables: tr(𝒯ᵢʳ) and Tᵢᵗ·𝒯ᵢ^(r−1)·Tᵢ for i, r = 1..3."""
    unfoldings = unfold3(b)
    aux_traces = np.zeros((3, 3))
    aux_quad = np.zeros((3, 3))
    for i in (1, 2, 3):
        cal = unfoldings.gram(i)
        local = b.local(i)
        power = np.eye(3)
        for r in (1, 2, 3):
            aux_quad[i - 1, r - 1] = local @ power @ local
            power = power @ cal
            aux_traces[i - 1, r - 1] = np.trace(power)
    return aux_traces, aux_quad


def fingerprint3(
    b: BlochTensor3,
    depth: int = settings.FAMILY_DEPTH,
    cap: int = settings.FAMILY_CAP,
    tol_rel: float = settings.RANK_TOL,
) -> Fingerprint3:
    families = build_families3(b, depth=depth, cap=cap, tol_rel=tol_rel)
    return fingerprint3_from_families(b, families, depth, tol_rel)


def fingerprint3_from_families(
    b: BlochTensor3,
    families: tuple[VectorFamily, VectorFamily, VectorFamily],
    depth: int,
    tol_rel: float = settings.RANK_TOL,
) -> Fingerprint3:
    bases_and_triples = [_basis_triple(family, tol_rel) for family in families]
    truncated = any(family.truncated for family in families)
    if truncated:
        logger.warning("Fingerprint at depth %d was built from truncated families", depth)

    aux_traces, aux_quad = lps_invariants(b)
    s1, s2, s3 = families
    return Fingerprint3(
        depth=depth,
        truncated=truncated,
        dims=(s1.dim, s2.dim, s3.dim),
        gram_mu=s1.gram(),
        gram_nu=s2.gram(),
        gram_omega=s3.gram(),
        triples=[value for _, value in bases_and_triples],
        bases=[basis for basis, _ in bases_and_triples],
        aux_traces=aux_traces,
        aux_quad=aux_quad,
    )
