import numpy as np
import pytest
from numpy.testing import assert_allclose

from luequiv.core.linalg import (
    char_poly3,
    cofactor3,
    is_special_orthogonal,
    orient_svd3,
    procrustes,
    rank_tol,
    svd3,
    triple,
)
from tests.conftest import random_rotation

E1, E2, E3 = np.eye(3)


def test_svd3_identity():
    result = svd3(np.eye(3))
    assert_allclose(result.sigma, [1, 1, 1])
    assert_allclose(result.left @ result.right.T, np.eye(3), atol=1e-14)


def test_svd3_diagonal():
    assert_allclose(svd3(np.diag([3.0, 2.0, 1.0])).sigma, [3, 2, 1])


def test_svd3_sorts_descending():
    result = svd3(np.diag([1.0, 3.0, 2.0]))
    assert_allclose(result.sigma, [3, 2, 1])
    assert_allclose(result.reconstruct(), np.diag([1.0, 3.0, 2.0]), atol=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_svd3_recovers_known_factors(seed):
    q1, q2 = random_rotation(seed), random_rotation(seed + 100)
    m = q1 @ np.diag([0.5, 0.3, 0.1]) @ q2.T
    result = svd3(m)
    assert_allclose(result.sigma, [0.5, 0.3, 0.1], atol=1e-12)
    assert_allclose(result.reconstruct(), m, atol=1e-12)


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.full((3, 3), np.nan)])
def test_svd3_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        svd3(bad)


@pytest.mark.parametrize("seed", range(5))
def test_orient_svd3_positive_determinant(seed):
    m = random_rotation(seed) @ np.diag([0.7, 0.4, 0.2]) @ random_rotation(seed + 50).T
    oriented = orient_svd3(svd3(m))
    assert np.linalg.det(oriented.left) > 0
    assert np.linalg.det(oriented.right) > 0
    assert_allclose(oriented.reconstruct(), m, atol=1e-12)


def test_orient_svd3_keeps_negative_determinant_without_zero_singular_value():
    m = np.diag([0.7, 0.4, -0.2])
    oriented = orient_svd3(svd3(m))
    assert np.linalg.det(oriented.left) > 0
    assert np.linalg.det(oriented.right) < 0
    assert_allclose(oriented.reconstruct(), m, atol=1e-14)


def test_orient_svd3_flips_right_alone_on_zero_singular_value():
    reflected = random_rotation(3) @ np.diag([0.7, 0.4, 0.0]) @ random_rotation(4).T
    oriented = orient_svd3(svd3(reflected))
    assert np.linalg.det(oriented.left) > 0
    assert np.linalg.det(oriented.right) > 0
    assert_allclose(oriented.reconstruct(), reflected, atol=1e-12)


@pytest.mark.parametrize(
    ("vectors", "expected"),
    [
        ([E1, E2], 2),
        ([np.zeros(3)], 0),
        ([np.array([1.0, 1.0, 1.0]), np.array([2.0, 2.0, 2.0]), E1], 2),
        ([E1, E2, E3], 3),
    ],
)
def test_rank_tol(vectors, expected):
    assert rank_tol(vectors, 1e-8) == expected


def test_rank_tol_rejects_empty_list():
    with pytest.raises(ValueError):
        rank_tol([], 1e-8)


def test_rank_tol_ignores_noise_below_tolerance():
    assert rank_tol([E1, E2, 1e-12 * E3], 1e-8) == 2


def test_triple():
    assert triple(E1, E2, E3) == pytest.approx(1.0)
    assert triple(E1, E1, E2) == pytest.approx(0.0)
    assert triple(np.array([1.0, 2, 3]), np.array([4.0, 5, 6]), np.array([7.0, 8, 10])) == pytest.approx(-3.0)


@pytest.mark.parametrize(
    ("m", "expected"),
    [
        (np.eye(3), (3.0, -3.0, 1.0)),
        (np.zeros((3, 3)), (0.0, 0.0, 0.0)),
        (np.diag([1.0, 2.0, 3.0]), (6.0, -11.0, 6.0)),
    ],
)
def test_char_poly3(m, expected):
    assert_allclose(char_poly3(m), expected, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_char_poly3_satisfies_cayley_hamilton(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((3, 3))
    m = x @ x.T
    c2, c1, c0 = char_poly3(m)
    assert_allclose(m @ m @ m, c2 * m @ m + c1 * m + c0 * np.eye(3), atol=1e-10)


def test_char_poly3_rejects_non_symmetric():
    with pytest.raises(ValueError, match="symmetric"):
        char_poly3(np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))


@pytest.mark.parametrize("seed", range(3))
def test_cofactor3_matches_adjugate(seed):
    m = np.random.default_rng(seed).standard_normal((3, 3))
    assert_allclose(cofactor3(m), np.linalg.det(m) * np.linalg.inv(m).T, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_procrustes_recovers_rotation(seed):
    o = random_rotation(seed)
    xs = np.random.default_rng(seed).standard_normal((3, 5))
    q, flipped = procrustes(xs, o @ xs)
    assert flipped is None
    assert_allclose(q, o, atol=1e-12)


def test_procrustes_offers_flip_on_deficient_source():
    xs = np.column_stack([E1, E2])
    q, flipped = procrustes(xs, xs)
    assert flipped is not None
    assert np.linalg.det(q) * np.linalg.det(flipped) < 0
    assert_allclose(flipped @ xs, xs, atol=1e-14)


def test_is_special_orthogonal():
    assert is_special_orthogonal(random_rotation(0))
    assert not is_special_orthogonal(np.diag([1.0, 1.0, -1.0]))
    assert not is_special_orthogonal(2 * np.eye(3))
