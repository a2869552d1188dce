import numpy as np
import pytest
from numpy.testing import assert_allclose

from luequiv.bloch.models import BlochTensor2
from luequiv.bloch.pauli import from_bloch2, to_bloch2
from luequiv.equivalence.alignment import (
    align_gram,
    degenerate_blocks,
    lemma1_align,
    stabilizer_align,
)
from luequiv.equivalence.double_cover import su2_to_so3
from luequiv.equivalence.models import VerdictKind
from luequiv.equivalence.two_qubit import decide2
from luequiv.statekit.generators import (
    degenerate_case2,
    orbit_pair,
    paper_counterexample,
    random_density,
)
from luequiv.statekit.models import DegenerateCase
from tests.conftest import random_rotation

E1, E2, E3 = np.eye(3)


def test_align_gram_recovers_rotation():
    o = random_rotation(0)
    xs = [E1, E2, E3, E1 + 2 * E2]
    q = align_gram(xs, [o @ x for x in xs], want_special=True)
    assert_allclose(q, o, atol=1e-12)


def test_align_gram_single_vector():
    q = align_gram([E1], [E2], want_special=True)
    assert np.linalg.det(q) == pytest.approx(1.0)
    assert_allclose(q @ E1, E2, atol=1e-14)


def test_align_gram_rejects_different_grams():
    assert align_gram([E1], [2 * E1], want_special=False) is None


def test_align_gram_reflection_of_spanning_family():
    xs, ys = [E1, E2, E3], [E1, E2, -E3]
    assert align_gram(xs, ys, want_special=True) is None
    assert_allclose(align_gram(xs, ys, want_special=False), np.diag([1.0, 1.0, -1.0]), atol=1e-14)


def test_align_gram_empty_lists():
    assert_allclose(align_gram([], [], want_special=True), np.eye(3))


def test_align_gram_unequal_lengths():
    with pytest.raises(ValueError, match="equal length"):
        align_gram([E1], [E1, E2], want_special=True)


@pytest.mark.parametrize("seed", range(5))
def test_lemma1_align_finds_rotations(seed):
    t12 = random_rotation(seed) @ np.diag([0.8, 0.5, -0.2]) @ random_rotation(seed + 30).T
    o1, o2 = random_rotation(seed + 60), random_rotation(seed + 90)
    t12_hat = o1 @ t12 @ o2.T
    found = lemma1_align(t12, t12_hat)
    assert found is not None
    r1, r2 = found
    assert_allclose(r1 @ t12 @ r2.T, t12_hat, atol=1e-10)
    assert np.linalg.det(r1) == pytest.approx(1.0)
    assert np.linalg.det(r2) == pytest.approx(1.0)


def test_lemma1_align_rejects_opposite_orientation():
    assert lemma1_align(np.eye(3), np.diag([1.0, 1.0, -1.0])) is None


def test_lemma1_align_rejects_different_singular_values():
    assert lemma1_align(np.diag([0.8, 0.5, 0.2]), np.diag([0.8, 0.5, 0.3])) is None


def test_lemma1_align_allows_reflection_with_zero_singular_value():
    found = lemma1_align(np.diag([0.8, 0.5, 0.0]), np.diag([0.8, -0.5, 0.0]))
    assert found is not None
    r1, r2 = found
    assert_allclose(r1 @ np.diag([0.8, 0.5, 0.0]) @ r2.T, np.diag([0.8, -0.5, 0.0]), atol=1e-12)


@pytest.mark.parametrize(
    ("t", "blocks", "zero"),
    [
        ([0.8, 0.5, 0.3], [[0], [1], [2]], []),
        ([0.8, 0.8, 0.3], [[0, 1], [2]], []),
        ([0.8, 0.5, 0.0], [[0], [1]], [2]),
        ([0.6, 0.6, 0.6], [[0, 1, 2]], []),
        ([0.0, 0.0, 0.0], [], [0, 1, 2]),
    ],
)
def test_degenerate_blocks(t, blocks, zero):
    assert degenerate_blocks(np.array(t)) == (blocks, zero)


def test_stabilizer_align_with_zero_coordinate():
    t = np.array([0.8, 0.5, 0.3])
    x1, x2 = np.array([0.0, 0.4, -0.2]), np.array([0.0, -0.3, 0.5])
    flip = np.diag([-1.0, -1.0, 1.0])
    found = stabilizer_align(t, x1, flip @ x1, x2, flip @ x2, (0.0, 0.0))
    assert found is not None
    r1, r2 = found
    assert_allclose(r1, flip, atol=1e-12)
    assert_allclose(r2, flip, atol=1e-12)


def test_stabilizer_align_rejects_unequal_invariant():
    t = np.array([0.8, 0.5, 0.3])
    x = np.array([0.0, 0.4, -0.2])
    assert stabilizer_align(t, x, x, x, x, (0.1, -0.1)) is None


def test_stabilizer_align_pinned_reflection_in_degenerate_block():
    t = np.array([0.6, 0.6, 0.3])
    x1, x2 = np.array([0.3, 0.2, 0.1]), np.array([0.1, 0.4, 0.2])
    reflection = np.diag([1.0, -1.0, 1.0])
    assert stabilizer_align(t, x1, reflection @ x1, x2, reflection @ x2, (0.0, 0.0)) is None


def test_stabilizer_align_without_correlations():
    v1, v2 = np.array([0.3, -0.1, 0.2]), np.array([-0.2, 0.4, 0.1])
    o1, o2 = random_rotation(1), random_rotation(2)
    found = stabilizer_align(np.zeros(3), v1, o1 @ v1, v2, o2 @ v2, (0.0, 0.0))
    assert found is not None
    r1, r2 = found
    assert_allclose(r1 @ v1, o1 @ v1, atol=1e-12)
    assert_allclose(r2 @ v2, o2 @ v2, atol=1e-12)
    assert np.linalg.det(r1) == pytest.approx(1.0)
    assert np.linalg.det(r2) == pytest.approx(1.0)


def test_decide2_identical_states(random_b2):
    verdict = decide2(random_b2, random_b2)
    assert verdict.kind is VerdictKind.Equivalent
    assert verdict.path == "identical"
    assert verdict.witness.residual == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_decide2_counterexample(seed):
    verdict = decide2(*paper_counterexample(seed))
    assert verdict.kind is VerdictKind.NotEquivalent
    assert verdict.certificate.field == "triple_mu"
    assert verdict.certificate.left == pytest.approx(-verdict.certificate.right)


@pytest.mark.parametrize("seed", range(10))
def test_decide2_random_orbit(seed):
    rho = random_density(4, seed)
    image, unitaries = orbit_pair(rho, seed + 1000)
    verdict = decide2(to_bloch2(rho), to_bloch2(image), rho_a=rho, rho_b=image)
    assert verdict.kind is VerdictKind.Equivalent
    assert verdict.path == "full_family"
    for rotation, unitary in zip(verdict.witness.rotations, unitaries, strict=True):
        assert_allclose(rotation, su2_to_so3(unitary), atol=1e-6)
    assert verdict.witness.residual <= 1e-8
    assert verdict.witness.density_residual <= 1e-8


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("case", list(DegenerateCase))
def test_decide2_degenerate_orbit(case, seed):
    rho = from_bloch2(degenerate_case2(case, seed)).density()
    image, _ = orbit_pair(rho, seed + 500)
    a, b = to_bloch2(rho), to_bloch2(image)
    verdict = decide2(a, b, rho_a=rho, rho_b=image)
    assert verdict.kind is VerdictKind.Equivalent, verdict.reason
    assert verdict.path == "stabilizer"
    assert verdict.witness.residual <= 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_decide2_random_pairs_differ(seed):
    a = to_bloch2(random_density(4, 2 * seed))
    b = to_bloch2(random_density(4, 2 * seed + 1))
    verdict = decide2(a, b)
    assert verdict.kind is VerdictKind.NotEquivalent
    assert verdict.certificate.field == "L"


def test_decide2_bell_against_maximally_mixed(phi_plus):
    verdict = decide2(to_bloch2(phi_plus), BlochTensor2.zeros())
    assert verdict.kind is VerdictKind.NotEquivalent
    assert verdict.certificate.field == "tr_alpha"


def test_decide2_bell_states_are_equivalent(phi_plus):
    psi_minus = BlochTensor2(T1=np.zeros(3), T2=np.zeros(3), T12=-np.eye(3))
    verdict = decide2(to_bloch2(phi_plus), psi_minus)
    assert verdict.kind is VerdictKind.Equivalent
    assert verdict.path == "stabilizer"


def test_decide2_failed_family_alignment_is_inconclusive(monkeypatch):
    rho = random_density(4, 0)
    image, _ = orbit_pair(rho, 1000)
    monkeypatch.setattr("luequiv.equivalence.two_qubit.align_gram", lambda *args, **kwargs: None)
    verdict = decide2(to_bloch2(rho), to_bloch2(image))
    assert verdict.kind is VerdictKind.Inconclusive
    assert verdict.path == "full_family"
    assert "no rotation of S1" in verdict.reason


@pytest.mark.parametrize("seed", range(10))
def test_decide2_is_symmetric_on_random_pairs(seed):
    a = to_bloch2(random_density(4, 3 * seed))
    b = to_bloch2(random_density(4, 3 * seed + 1))
    assert decide2(a, b).kind is decide2(b, a).kind


@pytest.mark.parametrize("seed", range(2))
@pytest.mark.parametrize("case", list(DegenerateCase))
def test_decide2_is_symmetric_on_degenerate_states(case, seed):
    rho = from_bloch2(degenerate_case2(case, seed)).density()
    image, _ = orbit_pair(rho, seed + 700)
    a, b = to_bloch2(rho), to_bloch2(image)
    assert decide2(a, b).kind is decide2(b, a).kind is VerdictKind.Equivalent
    other = degenerate_case2(case, seed + 1)
    assert decide2(a, other).kind is decide2(other, a).kind


@pytest.mark.parametrize("seed", range(5))
def test_decide2_is_symmetric_on_counterexample(seed):
    first, second = paper_counterexample(seed)
    assert decide2(first, second).kind is decide2(second, first).kind is VerdictKind.NotEquivalent
