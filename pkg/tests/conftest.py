import numpy as np
import pytest

from luequiv.bloch.models import BlochTensor2, BlochTensor3, DensityMatrix
from luequiv.bloch.pauli import to_bloch2, to_bloch3
from luequiv.statekit.generators import bell_state, ghz_state, random_density


def random_rotation(seed: int) -> np.ndarray:
    """Haar rotation from the QR decomposition of a Gaussian matrix."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1.0
    return q


@pytest.fixture
def phi_plus() -> DensityMatrix:
    return bell_state("phi_plus")


@pytest.fixture
def ghz() -> DensityMatrix:
    return ghz_state()


@pytest.fixture
def random_b2() -> BlochTensor2:
    return to_bloch2(random_density(4, 11))


@pytest.fixture
def random_b3() -> BlochTensor3:
    return to_bloch3(random_density(8, 13))
