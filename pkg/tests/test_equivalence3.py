import numpy as np
import pytest
from numpy.testing import assert_allclose

from luequiv.bloch.models import BlochTensor3
from luequiv.bloch.pauli import to_bloch3, transform_bloch3
from luequiv.equivalence.double_cover import su2_to_so3
from luequiv.equivalence.models import VerdictKind
from luequiv.equivalence.three_qubit import (
    _third_rotation,
    coverage_compare,
    decide3,
    lps_check,
    lps_equivalent,
)
from luequiv.families.models import VectorFamily
from luequiv.statekit.generators import (
    lps_blind_state3,
    orbit_pair,
    product_zero_state,
    random_density,
)
from tests.conftest import random_rotation


def test_decide3_identical_states(random_b3):
    verdict = decide3(random_b3, random_b3)
    assert verdict.kind is VerdictKind.Equivalent
    assert verdict.path == "identical"
    assert len(verdict.witness.rotations) == 3


@pytest.mark.parametrize("seed", range(5))
def test_decide3_random_orbit(seed):
    rho = random_density(8, seed)
    image, unitaries = orbit_pair(rho, seed + 1000)
    verdict = decide3(to_bloch3(rho), to_bloch3(image), rho_a=rho, rho_b=image)
    assert verdict.kind is VerdictKind.Equivalent, verdict.reason
    assert verdict.path == "full_families"
    assert max(verdict.witness.tensor_residuals.values()) <= 1e-8
    assert verdict.witness.density_residual <= 1e-8
    for rotation, unitary in zip(verdict.witness.rotations, unitaries, strict=True):
        assert_allclose(rotation, su2_to_so3(unitary), atol=1e-6)


def test_decide3_ghz_orbit_is_inconclusive(ghz):
    image, _ = orbit_pair(ghz, 3)
    verdict = decide3(to_bloch3(ghz), to_bloch3(image))
    assert verdict.kind is VerdictKind.Inconclusive
    assert "fewer than two" in verdict.reason


@pytest.mark.parametrize("seed", range(3))
def test_decide3_random_pairs_differ(seed):
    a = to_bloch3(random_density(8, 2 * seed))
    b = to_bloch3(random_density(8, 2 * seed + 1))
    verdict = decide3(a, b, depth=1)
    assert verdict.kind is VerdictKind.NotEquivalent
    assert verdict.certificate.field == "gram_mu"


def test_decide3_ghz_against_product_state(ghz):
    verdict = decide3(to_bloch3(ghz), to_bloch3(product_zero_state(3)))
    assert verdict.kind is VerdictKind.NotEquivalent
    assert verdict.certificate.field == "dims"


@pytest.mark.parametrize("seed", range(3))
def test_third_rotation_from_correlations_alone(random_b3, seed):
    rotations = [random_rotation(seed + k) for k in (0, 10, 20)]
    rotated = transform_bloch3(random_b3, rotations)
    empty = VectorFamily(label=3, members=[np.zeros(3)], tags=["T3"], dim=0)
    o3 = _third_rotation(3, random_b3, rotated, empty, empty, {1: rotations[0], 2: rotations[1]})
    assert o3 is not None
    assert_allclose(o3, rotations[2], atol=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_lps_applies_to_generic_states(seed):
    record = lps_check(to_bloch3(random_density(8, seed)))
    assert record.applicable
    assert np.all(np.diff(record.eigenvalues, axis=1) <= 0)


def test_lps_needs_local_vectors(random_b3):
    blind = random_b3.model_copy(update={"T1": np.zeros(3)})
    record = lps_check(blind)
    assert not record.applicable
    assert record.det_lambda_theta[0] == 0.0


def test_lps_does_not_apply_to_ghz(ghz):
    assert not lps_check(to_bloch3(ghz)).applicable


@pytest.mark.parametrize("seed", range(3))
def test_coverage_of_generic_states(seed):
    record = coverage_compare(to_bloch3(random_density(8, seed)))
    assert record.dims == (3, 3, 3)
    assert (record.theorem3_applicable, record.lps_applicable) == (True, True)


@pytest.mark.parametrize("seed", range(5))
def test_coverage_beyond_lps(seed):
    record = coverage_compare(lps_blind_state3(seed))
    assert (record.theorem3_applicable, record.lps_applicable) == (True, False)


def test_coverage_of_ghz(ghz):
    record = coverage_compare(to_bloch3(ghz))
    assert (record.theorem3_applicable, record.lps_applicable) == (False, False)


def test_coverage_of_maximally_mixed_state():
    record = coverage_compare(BlochTensor3.zeros())
    assert record.dims == (0, 0, 0)
    assert not record.theorem3_applicable


@pytest.mark.parametrize("seed", range(3))
def test_lps_invariants_agree_on_orbit(seed):
    rho = random_density(8, seed)
    image, _ = orbit_pair(rho, seed + 7)
    assert lps_equivalent(to_bloch3(rho), to_bloch3(image))


def test_lps_invariants_separate_random_states():
    a = to_bloch3(random_density(8, 0))
    b = to_bloch3(random_density(8, 1))
    assert not lps_equivalent(a, b)


@pytest.mark.parametrize("seed", range(3))
def test_decide3_is_symmetric_on_random_pairs(seed):
    a = to_bloch3(random_density(8, 3 * seed))
    b = to_bloch3(random_density(8, 3 * seed + 2))
    assert decide3(a, b, depth=1).kind is decide3(b, a, depth=1).kind


@pytest.mark.parametrize("seed", range(3))
def test_decide3_is_symmetric_on_orbits(seed):
    rho = random_density(8, seed + 20)
    image, _ = orbit_pair(rho, seed + 30)
    a, b = to_bloch3(rho), to_bloch3(image)
    assert decide3(a, b).kind is decide3(b, a).kind is VerdictKind.Equivalent


def test_decide3_is_symmetric_on_ghz_orbit(ghz):
    image, _ = orbit_pair(ghz, 4)
    a, b = to_bloch3(ghz), to_bloch3(image)
    assert decide3(a, b).kind is decide3(b, a).kind is VerdictKind.Inconclusive
