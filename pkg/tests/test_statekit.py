import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from luequiv.bloch.models import BlochTensor2
from luequiv.bloch.pauli import from_bloch2, from_bloch3
from luequiv.equivalence.double_cover import is_special_unitary
from luequiv.families.builder import build_families2
from luequiv.statekit.generators import (
    MIXING_MARGIN,
    bell_state,
    degenerate_case2,
    haar_su2,
    lps_blind_state3,
    mix_to_physical,
    orbit_pair,
    paper_counterexample,
    product_zero_state,
    random_density,
)
from luequiv.statekit.models import DegenerateCase, RngSeed


def test_random_density_is_deterministic():
    assert_allclose(random_density(8, 42).matrix, random_density(8, 42).matrix)
    assert not np.allclose(random_density(8, 42).matrix, random_density(8, 43).matrix)


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_random_density_rank(rank):
    rho = random_density(4, 0, rank=rank)
    assert np.linalg.matrix_rank(rho.matrix, tol=1e-10) == rank


@pytest.mark.parametrize(("dim", "rank"), [(3, None), (16, None), (4, 0), (4, 5)])
def test_random_density_rejects_bad_arguments(dim, rank):
    with pytest.raises(ValueError):
        random_density(dim, 0, rank=rank)


def test_seed_accepts_model_or_int():
    assert_allclose(random_density(4, RngSeed(seed=5)).matrix, random_density(4, 5).matrix)


def test_seed_bounds():
    with pytest.raises(ValidationError):
        RngSeed(seed=-1)
    with pytest.raises(ValidationError):
        RngSeed(seed=2**64)


def test_spawned_seeds_are_stable_and_distinct():
    first, second = RngSeed(seed=7).spawn(2)
    assert [first, second] == RngSeed(seed=7).spawn(2)
    assert first.seed != second.seed


@pytest.mark.parametrize("seed", range(5))
def test_haar_su2_is_special_unitary(seed):
    assert is_special_unitary(haar_su2(seed))


def test_orbit_pair_with_identity():
    rho = random_density(8, 1)
    image, unitaries = orbit_pair(rho, 0, identity=True)
    assert_allclose(image.matrix, rho.matrix, atol=1e-15)
    assert all(np.array_equal(u, np.eye(2)) for u in unitaries)
    assert len(unitaries) == 3


def test_orbit_pair_preserves_spectrum():
    rho = random_density(4, 2)
    image, _ = orbit_pair(rho, 3)
    assert_allclose(np.linalg.eigvalsh(image.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-12)


def test_named_states_reject_unknown_arguments():
    with pytest.raises(ValueError, match="Bell"):
        bell_state("phi_zero")
    with pytest.raises(ValueError):
        product_zero_state(4)


def test_mix_to_physical_keeps_physical_data(random_b2):
    assert mix_to_physical(random_b2) is random_b2


def test_mix_to_physical_leaves_margin():
    b = BlochTensor2(T1=[2.0, 0.0, 0.0], T2=np.zeros(3), T12=np.eye(3))
    mixed = mix_to_physical(b)
    reconstructed = from_bloch2(mixed)
    assert reconstructed.physical
    assert reconstructed.min_eigenvalue == pytest.approx((1 - MIXING_MARGIN) / 4)
    assert_allclose(mixed.T12 / mixed.T1[0], b.T12 / b.T1[0])


@pytest.mark.parametrize("seed", range(5))
def test_counterexample_construction(seed):
    first, second = paper_counterexample(seed)
    assert_allclose(first.T12, second.T12)
    assert_allclose(second.T1, first.T1 * np.array([1.0, 1.0, -1.0]))
    assert_allclose(first.T1, first.T1[0])
    assert not np.any(first.T2)
    assert from_bloch2(first).physical and from_bloch2(second).physical
    t = np.linalg.svd(first.T12, compute_uv=False)
    assert np.min(-np.diff(t)) > 0


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("case", list(DegenerateCase))
def test_degenerate_cases_are_physical_and_deficient(case, seed):
    b = degenerate_case2(case, seed)
    assert from_bloch2(b).physical
    s1, s2 = build_families2(b)
    assert max(s1.dim, s2.dim) < 3


def test_degenerate_case_patterns():
    t = np.linalg.svd(degenerate_case2(DegenerateCase.PairDegenerateZero, 0).T12, compute_uv=False)
    assert t[0] == pytest.approx(t[1])
    assert t[2] == pytest.approx(0.0, abs=1e-12)
    assert not np.any(degenerate_case2("zero_correlation", 0).T12)


def test_degenerate_case_rejects_unknown_name():
    with pytest.raises(ValueError):
        degenerate_case2("triangle", 0)


@pytest.mark.parametrize("seed", range(3))
def test_lps_blind_state(seed):
    b = lps_blind_state3(seed)
    assert not np.any(b.T3)
    assert from_bloch3(b).physical
