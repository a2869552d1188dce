import logging
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from luequiv.bloch.models import BlochTensor2, BlochTensor3, Unfoldings3
from luequiv.bloch.pauli import unfold3
from luequiv.config import settings
from luequiv.core.linalg import rank_tol
from luequiv.families.models import SYMBOLS, VectorFamily

logger = logging.getLogger(__name__)

MIN_MEMBER_NORM = 1e-12


def build_families2(
    b: BlochTensor2, tol_rel: float = settings.RANK_TOL
) -> tuple[VectorFamily, VectorFamily]:
    """
    The six-member families S1 = (μ₁..μ₆) and S2 = (ν₁..ν₆).

    Later members are linear combinations of these by the Cayley-Hamilton theorem
    applied to T12·T12ᵗ and T12ᵗ·T12.
    """
    a = b.T12 @ b.T12.T
    c = b.T12.T @ b.T12
    t12_t2 = b.T12 @ b.T2
    t12t_t1 = b.T12.T @ b.T1

    mu = [b.T1, t12_t2, a @ b.T1, a @ t12_t2, a @ a @ b.T1, a @ a @ t12_t2]
    nu = [b.T2, t12t_t1, c @ b.T2, c @ t12t_t1, c @ c @ b.T2, c @ c @ t12t_t1]
    mu_tags = [
        "T1",
        "T12·T2",
        "(T12·T12ᵗ)·T1",
        "(T12·T12ᵗ)·T12·T2",
        "(T12·T12ᵗ)²·T1",
        "(T12·T12ᵗ)²·T12·T2",
    ]
    nu_tags = [
        "T2",
        "T12ᵗ·T1",
        "(T12ᵗ·T12)·T2",
        "(T12ᵗ·T12)·T12ᵗ·T1",
        "(T12ᵗ·T12)²·T2",
        "(T12ᵗ·T12)²·T12ᵗ·T1",
    ]
    return (
        VectorFamily(label=1, members=mu, tags=mu_tags, dim=rank_tol(mu, tol_rel)),
        VectorFamily(label=2, members=nu, tags=nu_tags, dim=rank_tol(nu, tol_rel)),
    )


class _GrowingFamily:
    def __init__(self, label: int, seed: npt.NDArray[np.float64], cap: int, parallel_tol: float):
        self.label = label
        self.members: list[npt.NDArray[np.float64]] = [seed.copy()]
        self.tags: list[str] = [f"T{label}"]
        self.cap = cap
        self.parallel_tol = parallel_tol
        self.truncated = False

    def name(self, index: int) -> str:
        return f"{SYMBOLS[self.label]}{index + 1}"

    def offer(self, vector: npt.NDArray[np.float64], tag: str) -> None:
        if self.truncated:
            return
        norm = float(np.linalg.norm(vector))
        if norm <= MIN_MEMBER_NORM:
            return
        for member in self.members:
            member_norm = float(np.linalg.norm(member))
            if member_norm <= MIN_MEMBER_NORM:
                continue
            cosine = abs(float(np.dot(member, vector))) / (member_norm * norm)
            if cosine >= 1.0 - self.parallel_tol:
                return
        if len(self.members) >= self.cap:
            self.truncated = True
            logger.warning(
                "Family S%d reached the cap of %d members; generation stopped", self.label, self.cap
            )
            return
        self.members.append(vector)
        self.tags.append(tag)


def _round_candidates(
    b: BlochTensor3,
    unfoldings: Unfoldings3,
    target: int,
    snapshot: dict[int, list[tuple[str, npt.NDArray[np.float64]]]],
) -> Iterator[tuple[npt.NDArray[np.float64], str]]:
    """Candidates for family `target` in generator precedence order."""
    gram = unfoldings.gram(target)
    for name, v in snapshot[target]:
        yield gram @ v, f"𝒯{target}·{name}"
        yield gram @ (gram @ v), f"𝒯{target}²·{name}"

    others = [j for j in (1, 2, 3) if j != target]
    for j in others:
        pair = b.pair(target, j)
        pair_tag = f"T{target}{j}" if target < j else f"T{j}{target}ᵗ"
        for name, v in snapshot[j]:
            yield pair @ v, f"{pair_tag}·{name}"

    j, k = others
    unfolding = unfoldings.unfolding(target)
    for v_name, v in snapshot[j]:
        for w_name, w in snapshot[k]:
            yield unfolding @ np.kron(v, w), f"T{target}|{j}{k}·({v_name}⊗{w_name})"


def build_families3(
    b: BlochTensor3,
    depth: int = settings.FAMILY_DEPTH,
    cap: int = settings.FAMILY_CAP,
    tol_rel: float = settings.RANK_TOL,
    parallel_tol: float = settings.PARALLEL_TOL,
) -> tuple[VectorFamily, VectorFamily, VectorFamily]:
    """
    Grow S1, S2, S3 from the seeds T1, T2, T3 for `depth` rounds.

    Each round offers, for every family, the images of the members present at the start
    of the round under 𝒯ᵢ and 𝒯ᵢ², under the pair correlations from the other two
    families, and under T_{i|jk} applied to v ⊗ w. Vectors of norm below 1e-12 and
    vectors parallel to an existing member are dropped. Members of a shallower build
    are always a prefix of a deeper one.
    """
    if not 1 <= depth <= 3:
        raise ValueError(f"depth must be between 1 and 3, got {depth}")

    growing = {
        label: _GrowingFamily(label, b.local(label), cap, parallel_tol) for label in (1, 2, 3)
    }
    unfoldings = unfold3(b)
    for _ in range(depth):
        snapshot = {
            label: [(family.name(n), v) for n, v in enumerate(family.members)]
            for label, family in growing.items()
        }
        for label, family in growing.items():
            for vector, tag in _round_candidates(b, unfoldings, label, snapshot):
                family.offer(vector, tag)

    s1, s2, s3 = (
        VectorFamily(
            label=label,
            members=family.members,
            tags=family.tags,
            dim=rank_tol(family.members, tol_rel),
            truncated=family.truncated,
        )
        for label, family in growing.items()
    )
    return s1, s2, s3


def pick_basis(
    f: VectorFamily, tol_rel: float = settings.RANK_TOL
) -> tuple[int, int, int] | None:
    """
    Lexicographically first triple of 1-based member positions spanning R³.

    Greedy selection finds it: the first nonzero member, then the first member not
    parallel to it, then the first member outside their plane.
    """
    if f.dim < 3:
        return None
    chosen: list[int] = []
    for index, member in enumerate(f.members):
        candidate = [f.members[c] for c in chosen] + [member]
        if rank_tol(candidate, tol_rel) == len(candidate):
            chosen.append(index)
            if len(chosen) == 3:
                return chosen[0] + 1, chosen[1] + 1, chosen[2] + 1
    return None
