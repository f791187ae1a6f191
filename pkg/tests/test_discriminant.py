import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bezout.discriminant import (
    as_symmetric,
    is_psd,
    linear_image_check,
    matrix_from_json,
    matrix_to_json,
    mixed_discriminant,
    mixed_discriminant_interp,
    random_psd,
    restrict,
    simultaneous_diagonalize,
)


def permanent(rows):
    n = len(rows)
    return sum(math.prod(rows[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


@pytest.mark.parametrize("n", range(1, 6))
def test_identity_and_diagonal(n, rng):
    assert math.isclose(mixed_discriminant([np.eye(n)], [n]), 1.0)
    A = random_psd(n, rng)
    assert math.isclose(mixed_discriminant([A], [n]), np.linalg.det(A), rel_tol=1e-9)


@pytest.mark.parametrize("n", range(2, 6))
def test_oracle_agreement(n, rng):
    mats = [random_psd(n, rng) for _ in range(3)]
    mult = [n - 2, 1, 1]
    a = mixed_discriminant(mats, mult)
    b = mixed_discriminant_interp(mats, mult)
    assert math.isclose(a, b, rel_tol=1e-8)


def test_interp_single_matrix(rng):
    A = random_psd(4, rng)
    assert math.isclose(mixed_discriminant_interp([A], [4]), np.linalg.det(A), rel_tol=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_identity_with_one_diagonal(n, rng):
    lam = rng.uniform(0.5, 3, n)
    value = mixed_discriminant([np.eye(n), np.diag(lam)], [n - 1, 1])
    assert math.isclose(value, lam.mean(), rel_tol=1e-12)


@pytest.mark.parametrize("n", range(1, 6))
def test_permanent_identity(n, rng):
    rows = rng.uniform(0, 2, (n, n))
    value = mixed_discriminant([np.diag(r) for r in rows])
    assert math.isclose(math.factorial(n) * value, permanent(rows), rel_tol=1e-9)


def test_restriction_identity(rng):
    n, k = 4, 2
    lam = rng.uniform(0.2, 2, n)
    M = [random_psd(n, rng) for _ in range(n - k)]
    lhs = mixed_discriminant([np.diag(lam), *M], [k] + [1] * (n - k))
    total = 0.0
    for K in itertools.combinations(range(n), k):
        Kc = [j for j in range(n) if j not in K]
        total += math.prod(lam[list(K)]) * mixed_discriminant([restrict(Mj, Kc) for Mj in M])
    assert math.isclose(lhs, total / math.comb(n, k), rel_tol=1e-9)


def test_restrict():
    assert np.array_equal(restrict(np.eye(4), [0, 2]), np.eye(2))
    assert np.array_equal(restrict(np.diag([1.0, 2, 3]), [1, 2]), np.diag([2.0, 3]))
    with pytest.raises(ValueError):
        restrict(np.eye(3), [])
    with pytest.raises(ValueError):
        restrict(np.eye(3), [3])


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_restriction_inherits_psd(seed, n):
    rng = np.random.default_rng(seed)
    M = random_psd(n, rng, rank=1, eps=0.0)
    idx = sorted(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False))
    w_sub = np.linalg.eigvalsh(restrict(M, idx))
    assert w_sub[0] >= -1e-10 * max(w_sub[-1], 1.0)


def test_simultaneous_diagonalize(rng):
    P, lam = simultaneous_diagonalize(np.eye(3), np.diag([1.0, 2, 3]))
    assert np.allclose(P, np.eye(3)) and np.allclose(lam, [1, 2, 3])
    P, lam = simultaneous_diagonalize(4 * np.eye(2), np.eye(2))
    assert np.allclose(P, 2 * np.eye(2)) and np.allclose(lam, [0.25, 0.25])
    A, B = random_psd(4, rng), random_psd(4, rng)
    P, lam = simultaneous_diagonalize(A, B)
    assert np.allclose(P @ P.T, A, rtol=1e-8, atol=1e-8 * np.abs(A).max())
    assert np.allclose(P @ np.diag(lam) @ P.T, B, rtol=1e-8, atol=1e-8 * np.abs(B).max())
    with pytest.raises(ValueError):
        simultaneous_diagonalize(np.diag([1.0, 0.0]), np.eye(2))


def test_linear_image(rng):
    mats = [random_psd(3, rng) for _ in range(3)]
    assert linear_image_check(np.eye(3), mats).passed
    rep = linear_image_check(2 * np.eye(3), mats)
    assert rep.passed and math.isclose(rep.lhs / rep.rhs, 1.0)
    assert math.isclose(rep.lhs, 64 * mixed_discriminant(mats), rel_tol=1e-12)
    assert linear_image_check(rng.normal(size=(3, 3)), mats).passed
    with pytest.raises(ValueError):
        linear_image_check(np.zeros((3, 3)), mats)


@given(st.integers(0, 2**32 - 1), st.floats(-3, 3), st.floats(-3, 3))
def test_multilinear_signed(seed, a, b):
    rng = np.random.default_rng(seed)
    M, N, R, S = (random_psd(3, rng) for _ in range(4))
    lhs = mixed_discriminant([a * M + b * N, R, S], clamp=False)
    rhs = a * mixed_discriminant([M, R, S]) + b * mixed_discriminant([N, R, S])
    assert math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9 * (abs(a) + abs(b)) * 100)


@given(st.integers(0, 2**32 - 1), st.permutations(range(4)))
def test_symmetric_and_nonnegative(seed, perm):
    rng = np.random.default_rng(seed)
    mats = [random_psd(4, rng, rank=2, eps=0.0) for _ in range(4)]
    a = mixed_discriminant(mats)
    assert a >= 0
    assert math.isclose(a, mixed_discriminant([mats[p] for p in perm]), rel_tol=1e-9, abs_tol=1e-12)


def test_validation():
    with pytest.raises(ValueError):
        as_symmetric([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        as_symmetric(np.ones((2, 3)))
    with pytest.raises(ValueError):
        mixed_discriminant([np.eye(3)], [2])
    with pytest.raises(ValueError):
        mixed_discriminant([np.eye(3)], [3], max_dim=2)
    assert is_psd(np.diag([1.0, 0.0]))
    assert not is_psd(np.diag([1.0, -1.0]))


def test_json_round_trip(rng):
    A = random_psd(3, rng)
    text = matrix_to_json(A)
    assert json.loads(text)["n"] == 3
    assert np.array_equal(matrix_from_json(text), A)
    nested = json.dumps({"n": 2, "entries": [[1, 0], [0, 2]]})
    assert np.array_equal(matrix_from_json(nested), np.diag([1.0, 2.0]))
    with pytest.raises(ValueError):
        matrix_from_json(json.dumps({"n": 2, "entries": [1, 2, 3]}))
