import logging

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize

from luequiv.bloch.models import DensityMatrix
from luequiv.bloch.pauli import local_operator
from luequiv.config import settings
from luequiv.equivalence.double_cover import SU2, quaternion_to_su2
from luequiv.statekit.models import OracleResult, RngSeed, as_seed

logger = logging.getLogger(__name__)


def angles_to_su2(v: npt.NDArray[np.float64]) -> SU2:
    """exp(−i·(v·σ)/2): rotation by |v| about v/|v|, smooth through v = 0."""
    angle = float(np.linalg.norm(v))
    # sin(|v|/2)/|v| written through np.sinc so the origin needs no special case
    scale = 0.5 * np.sinc(angle / (2 * np.pi))
    return quaternion_to_su2(np.concatenate(([np.cos(angle / 2)], scale * v)))


def _unitaries(params: npt.NDArray[np.float64], qubits: int) -> list[SU2]:
    return [angles_to_su2(params[3 * k : 3 * k + 3]) for k in range(qubits)]


def oracle_min_distance(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    restarts: int = settings.ORACLE_RESTARTS,
    seed: RngSeed | int = 0,
    max_iter: int = settings.ORACLE_MAX_ITER,
    stop_below: float = settings.ORACLE_STOP_BELOW,
) -> OracleResult:
    """
    Smallest ‖σ − U·ρ·U†‖_F found over U = U₁ ⊗ … ⊗ Uₙ by Nelder-Mead restarts.

    The first start is the identity; the others are drawn uniformly from [−π, π]³ⁿ
    with one child seed per restart. The search stops early once the distance drops
    below `stop_below`. The result is an upper bound on the orbit distance only.
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"States have different dimensions {rho.dim} and {sigma.dim}")
    if restarts < 1:
        raise ValueError(f"restarts must be positive, got {restarts}")
    qubits = rho.qubits
    target = sigma.matrix

    def objective(params: npt.NDArray[np.float64]) -> float:
        u = local_operator(_unitaries(params, qubits))
        return float(np.linalg.norm(target - u @ rho.matrix @ u.conj().T) ** 2)

    options = {"xatol": 1e-10, "fatol": 1e-16, "maxiter": max_iter, "maxfev": 2 * max_iter}
    children = as_seed(seed).sequence().spawn(restarts)
    best_value = np.inf
    best_point = np.zeros(3 * qubits)
    history: list[float] = []
    used = 0
    for index, child in enumerate(children):
        if index == 0:
            start = np.zeros(3 * qubits)
        else:
            start = np.random.default_rng(child).uniform(-np.pi, np.pi, 3 * qubits)
        result = minimize(objective, start, method="Nelder-Mead", options=options)
        # a second pass from the optimum restarts the simplex at full size
        result = minimize(objective, result.x, method="Nelder-Mead", options=options)
        used += 1
        if result.fun < best_value:
            best_value, best_point = float(result.fun), np.asarray(result.x)
        history.append(float(np.sqrt(best_value)))
        logger.debug("Oracle restart %d reached %.3e", index, np.sqrt(result.fun))
        if np.sqrt(best_value) <= stop_below:
            break

    return OracleResult(
        min_distance=float(np.sqrt(best_value)),
        best_unitaries=_unitaries(best_point, qubits),
        restarts_used=used,
        history=history,
    )
