"""Seeded random states, local unitaries and the special constructions used in tests."""

import logging
from typing import overload

import numpy as np
import numpy.typing as npt

from luequiv.bloch.models import BlochTensor2, BlochTensor3, DensityMatrix
from luequiv.bloch.pauli import conjugate, from_bloch2, from_bloch3, to_bloch3
from luequiv.core.linalg import triple
from luequiv.equivalence.double_cover import SU2, quaternion_to_su2, su2_to_so3
from luequiv.families.builder import build_families2, pick_basis
from luequiv.statekit.models import DegenerateCase, RngSeed, as_seed

logger = logging.getLogger(__name__)

MIXING_MARGIN = 0.9
# far above any comparison tolerance, so the sign flip is always resolved
MIN_COUNTEREXAMPLE_TRIPLE = 1e-7

_BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1]) / np.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1]) / np.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0]) / np.sqrt(2),
    "psi_minus": np.array([0, 1, -1, 0]) / np.sqrt(2),
}
# T12 of each Bell state; convex combinations fill the tetrahedron of Bell-diagonal states
_BELL_CORRELATIONS = np.array([[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]], dtype=np.float64)


def _pure(vector: npt.NDArray[np.complex128]) -> DensityMatrix:
    return DensityMatrix.from_array(np.outer(vector, vector.conj()))


def random_density(dim: int, seed: RngSeed | int, rank: int | None = None) -> DensityMatrix:
    """G·G†/tr(G·G†) for a dim×rank matrix G of standard complex Gaussians."""
    if dim not in (4, 8):
        raise ValueError(f"dim must be 4 or 8, got {dim}")
    columns = dim if rank is None else rank
    if not 1 <= columns <= dim:
        raise ValueError(f"rank must lie between 1 and {dim}, got {rank}")
    rng = as_seed(seed).generator()
    g = rng.standard_normal((dim, columns)) + 1j * rng.standard_normal((dim, columns))
    rho = g @ g.conj().T
    return DensityMatrix.from_array(rho / np.trace(rho).real)


def _haar_su2(rng: np.random.Generator) -> SU2:
    q = rng.standard_normal(4)
    return quaternion_to_su2(q / np.linalg.norm(q))


def haar_su2(seed: RngSeed | int) -> SU2:
    """Haar-distributed SU(2) element from a normalized Gaussian quaternion."""
    return _haar_su2(as_seed(seed).generator())


def random_bloch_rotation(seed: RngSeed | int) -> tuple[SU2, npt.NDArray[np.float64]]:
    u = haar_su2(seed)
    return u, su2_to_so3(u)


def _random_rotation(rng: np.random.Generator) -> npt.NDArray[np.float64]:
    return su2_to_so3(_haar_su2(rng))


def orbit_pair(
    rho: DensityMatrix, seed: RngSeed | int, identity: bool = False
) -> tuple[DensityMatrix, list[SU2]]:
    """Image of ρ under independent Haar SU(2) factors, with the factors applied."""
    rng = as_seed(seed).generator()
    if identity:
        unitaries = [np.eye(2, dtype=np.complex128) for _ in range(rho.qubits)]
    else:
        unitaries = [_haar_su2(rng) for _ in range(rho.qubits)]
    return conjugate(rho, unitaries), unitaries


def bell_state(which: str = "phi_plus") -> DensityMatrix:
    if which not in _BELL_VECTORS:
        raise ValueError(f"Unknown Bell state {which!r}; expected one of {sorted(_BELL_VECTORS)}")
    return _pure(_BELL_VECTORS[which].astype(np.complex128))


def ghz_state() -> DensityMatrix:
    vector = np.zeros(8, dtype=np.complex128)
    vector[0] = vector[7] = 1 / np.sqrt(2)
    return _pure(vector)


def product_zero_state(n: int) -> DensityMatrix:
    if n not in (2, 3):
        raise ValueError(f"Only two- and three-qubit states are supported, got {n}")
    vector = np.zeros(2**n, dtype=np.complex128)
    vector[0] = 1.0
    return _pure(vector)


def _mixing_factor(b: BlochTensor2 | BlochTensor3, margin: float) -> float:
    reconstructed = from_bloch2(b) if isinstance(b, BlochTensor2) else from_bloch3(b)
    if reconstructed.physical:
        return 1.0
    dim = reconstructed.matrix.shape[0]
    # eigenvalues of ρ(λ) are (1 + λx)/dim where x ranges over those of dim·ρ(1) − I
    x_min = dim * reconstructed.min_eigenvalue - 1.0
    return margin / -x_min


@overload
def mix_to_physical(b: BlochTensor2, margin: float = MIXING_MARGIN) -> BlochTensor2: ...
@overload
def mix_to_physical(b: BlochTensor3, margin: float = MIXING_MARGIN) -> BlochTensor3: ...
def mix_to_physical(
    b: BlochTensor2 | BlochTensor3, margin: float = MIXING_MARGIN
) -> BlochTensor2 | BlochTensor3:
    """
    Scale all Bloch data by one factor, moving toward the maximally mixed state until
    the expansion is positive. Physical data is returned unchanged.
    """
    factor = _mixing_factor(b, margin)
    return b if factor == 1.0 else b.scaled(factor)


def _distinct_values(rng: np.random.Generator, count: int, min_gap: float = 0.05) -> npt.NDArray[np.float64]:
    while True:
        values = np.sort(rng.uniform(0.2, 0.9, count))[::-1]
        if count == 1 or float(np.min(-np.diff(values))) >= min_gap:
            return values


def _first_triple(b: BlochTensor2) -> float:
    s1, _ = build_families2(b)
    basis = pick_basis(s1)
    if basis is None:
        return 0.0
    r, s, t = basis
    return triple(s1.members[r - 1], s1.members[s - 1], s1.members[t - 1])


def paper_counterexample(seed: RngSeed | int) -> tuple[BlochTensor2, BlochTensor2]:
    """
    Two states sharing T12 and every invariant of L, with T1 = (1,1,1) and T̂1 = (1,1,−1).

    T12 = Q_L·diag(t)·Q_Rᵗ with distinct t and Q_L a rotation about e3, so the
    reflection R = diag(1,1,−1) commutes with T12·T12ᵗ and maps the whole S1 family of
    one state onto the other. The triple products of S1 therefore differ in sign only.
    Both states are mixed toward I/4 by a common factor, and T12 is resampled until
    S1 spans R³ with a triple product of at least MIN_COUNTEREXAMPLE_TRIPLE after mixing.
    """
    rng = as_seed(seed).generator()
    t1 = np.array([1.0, 1.0, 1.0])
    t1_hat = np.array([1.0, 1.0, -1.0])
    while True:
        angle = rng.uniform(0.0, 2 * np.pi)
        q_left = np.array(
            [[np.cos(angle), -np.sin(angle), 0.0], [np.sin(angle), np.cos(angle), 0.0], [0.0, 0.0, 1.0]]
        )
        q_right = _random_rotation(rng)
        t12 = q_left @ np.diag(_distinct_values(rng, 3)) @ q_right.T
        first = BlochTensor2(T1=t1, T2=np.zeros(3), T12=t12)
        second = BlochTensor2(T1=t1_hat, T2=np.zeros(3), T12=t12)
        factor = min(_mixing_factor(first, MIXING_MARGIN), _mixing_factor(second, MIXING_MARGIN))
        first, second = first.scaled(factor), second.scaled(factor)
        if abs(_first_triple(first)) >= MIN_COUNTEREXAMPLE_TRIPLE:
            return first, second
        logger.debug("Resampling T12: triple product of S1 too close to zero")


def degenerate_case2(case: DegenerateCase | str, seed: RngSeed | int) -> BlochTensor2:
    """
    Physical two-qubit Bloch data whose T12 has the singular-value pattern of `case`.

    Data is built in the singular frame, T12 = Q1·diag(t)·Q2ᵗ, T1 = Q1·x1, T2 = Q2·x2,
    with the frame coordinates x1, x2 constrained so that neither family spans R³.
    """
    kind = DegenerateCase(case)
    rng = as_seed(seed).generator()
    q1, q2 = _random_rotation(rng), _random_rotation(rng)
    x1, x2 = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)

    match kind:
        case DegenerateCase.DistinctZeroCoordinate:
            t = _distinct_values(rng, 3)
            x1[0] = x2[0] = 0.0
        case DegenerateCase.ZeroSingularValue:
            t = np.append(_distinct_values(rng, 2), 0.0)
            x1[1] = x2[1] = 0.0
        case DegenerateCase.PairDegenerate | DegenerateCase.PairDegenerateZero:
            pair, other = _distinct_values(rng, 2)
            third = 0.0 if kind is DegenerateCase.PairDegenerateZero else other
            t = np.array([pair, pair, third])
            direction = rng.standard_normal(2)
            direction /= np.linalg.norm(direction)
            x1[:2] = rng.uniform(-1, 1) * direction
            x2[:2] = rng.uniform(-1, 1) * direction
        case DegenerateCase.SingleNonzero:
            t = np.array([rng.uniform(0.2, 0.9), 0.0, 0.0])
        case DegenerateCase.AllEqual:
            t = np.full(3, rng.uniform(0.2, 0.9))
        case DegenerateCase.ZeroCorrelation:
            t = np.zeros(3)
        case DegenerateCase.BellDiagonal:
            weights = rng.dirichlet(np.ones(4))
            correlations = weights @ _BELL_CORRELATIONS
            return BlochTensor2(T1=np.zeros(3), T2=np.zeros(3), T12=q1 @ np.diag(correlations) @ q2.T)

    b = BlochTensor2(T1=q1 @ x1, T2=q2 @ x2, T12=q1 @ np.diag(t) @ q2.T)
    return mix_to_physical(b)


def lps_blind_state3(seed: RngSeed | int) -> BlochTensor3:
    """A generic three-qubit state with T3 removed, mixed toward I/8 until positive."""
    b = to_bloch3(random_density(8, seed))
    blind = b.model_copy(update={"T3": np.zeros(3)})
    return mix_to_physical(blind)
