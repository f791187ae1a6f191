"""Mixed discriminants of symmetric matrices.

``mixed_discriminant`` uses the polarization formula

    D(C_1, ..., C_n) = 1/n! * sum_{sigma in S_n} det(C_sigma(1)^1, ..., C_sigma(n)^n)

where ``C^j`` is the j-th column of ``C``. ``mixed_discriminant_interp``
reads the same value off the polynomial ``det(t_1 M_1 + ... + t_m M_m)``.
"""
from __future__ import annotations

import itertools
import json
import math
from typing import Iterable, Sequence

import numpy as np

from .mixed_volume import (
    NumericalConsistencyError,
    homogeneous_coefficients,
    multinomial,
)
from .report import InequalityReport, identity_report, serialize

__all__ = [
    "MAX_DIM",
    "as_symmetric",
    "is_psd",
    "random_psd",
    "mixed_discriminant",
    "mixed_discriminant_interp",
    "restrict",
    "simultaneous_diagonalize",
    "linear_image_check",
    "matrix_to_json",
    "matrix_from_json",
]

MAX_DIM = 8
SYM_ATOL = 1e-12
PSD_RTOL = 1e-10


def as_symmetric(M) -> np.ndarray:
    """Validate and return ``M`` as a float square symmetric array."""
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    if not np.allclose(A, A.T, rtol=0, atol=SYM_ATOL * max(1.0, np.abs(A).max())):
        raise ValueError("matrix is not symmetric")
    return A


def is_psd(M, rtol: float = PSD_RTOL) -> bool:
    """Smallest eigenvalue >= -rtol * max(largest eigenvalue, 1)."""
    w = np.linalg.eigvalsh(as_symmetric(M))
    return bool(w[0] >= -rtol * max(w[-1], 1.0))


def random_psd(n: int, rng: np.random.Generator, rank: int | None = None,
               eps: float = 1e-6) -> np.ndarray:
    """G^T G + eps I with G a ``rank`` x n standard normal matrix."""
    G = rng.standard_normal((n if rank is None else rank, n))
    return G.T @ G + eps * np.eye(n)


def _flatten(matrices: Sequence, multiplicities: Sequence[int] | None,
             max_dim: int) -> list[np.ndarray]:
    mats = [as_symmetric(M) for M in matrices]
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[0]
    if any(M.shape != (n, n) for M in mats):
        raise ValueError("all matrices must be n x n")
    if multiplicities is None:
        multiplicities = [1] * len(mats)
    mult = [int(i) for i in multiplicities]
    if len(mult) != len(mats) or any(i < 0 for i in mult):
        raise ValueError("one nonnegative multiplicity per matrix is required")
    if sum(mult) != n:
        raise ValueError(f"multiplicities sum to {sum(mult)}, expected n = {n}")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds cap {max_dim}")
    return [M for M, i in zip(mats, mult) for _ in range(i)]


def mixed_discriminant(matrices: Sequence, multiplicities: Sequence[int] | None = None,
                       *, max_dim: int = MAX_DIM, clamp: bool = True) -> float:
    """D(M_1[i_1], ..., M_m[i_m]) by the polarization formula.

    With ``clamp`` (the default) tiny negative round-off is set to 0; pass
    ``clamp=False`` for indefinite arguments, where negative values are
    legitimate.
    """
    flat = _flatten(matrices, multiplicities, max_dim)
    n = len(flat)
    C = np.stack(flat)  # (n, n, n): matrix, row, column
    perms = np.array(list(itertools.permutations(range(n))))
    cols = np.arange(n)
    # stacked[p][:, j] = C[perms[p, j]][:, j]
    stacked = C[perms[:, None, :], cols[None, :, None], cols[None, None, :]]
    dets = np.linalg.det(stacked)
    value = float(dets.sum()) / math.factorial(n)
    if not clamp or value >= 0:
        return value
    scale = float(np.abs(dets).max()) / math.factorial(n) * len(dets)
    if -value <= 1e-10 * max(scale, 1e-300):
        return 0.0
    raise NumericalConsistencyError(f"mixed discriminant evaluated to {value:.3e}")


def mixed_discriminant_interp(matrices: Sequence, multiplicities: Sequence[int] | None = None,
                              *, max_dim: int = MAX_DIM) -> float:
    """Normalized coefficient of t^i in det(t_1 M_1 + ... + t_m M_m)."""
    mats = [as_symmetric(M) for M in matrices]
    if multiplicities is None:
        multiplicities = [1] * len(mats)
    _flatten(mats, multiplicities, max_dim)  # validation only
    pairs = [(M, i) for M, i in zip(mats, multiplicities) if i > 0]
    mats = [M for M, _ in pairs]
    mult = [int(i) for _, i in pairs]
    n = mats[0].shape[0]
    stack = np.stack(mats)

    def evaluate(t):
        return np.linalg.det(np.tensordot(np.asarray(t), stack, axes=1))

    c = homogeneous_coefficients(evaluate, len(mats), n)[tuple(mult)]
    return c / multinomial(n, mult)


def _index_list(indices: Iterable[int], n: int) -> list[int]:
    idx = sorted(set(int(k) for k in indices))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= n:
        raise ValueError(f"indices out of range for dimension {n}")
    return idx


def restrict(M, indices: Iterable[int]) -> np.ndarray:
    """Principal submatrix of ``M`` on rows and columns ``indices``."""
    A = as_symmetric(M)
    idx = _index_list(indices, A.shape[0])
    return A[np.ix_(idx, idx)]


def simultaneous_diagonalize(A, B) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(P, lam)`` with ``A = P P^T`` and ``B = P diag(lam) P^T``.

    ``A`` must be positive definite. When ``L^{-1} B L^{-T}`` is already
    diagonal (``L`` the Cholesky factor) no rotation is applied.
    """
    A = as_symmetric(A)
    B = as_symmetric(B)
    if A.shape != B.shape:
        raise ValueError("A and B must have the same shape")
    w = np.linalg.eigvalsh(A)
    if w[0] <= 1e-10:
        raise ValueError("A must be positive definite")
    L = np.linalg.cholesky(A)
    Linv = np.linalg.inv(L)
    C = Linv @ B @ Linv.T
    C = (C + C.T) / 2
    off = C - np.diag(np.diag(C))
    if np.abs(off).max() <= 1e-14 * max(1.0, np.abs(C).max()):
        return L, np.diag(C).copy()
    lam, Q = np.linalg.eigh(C)
    return L @ Q, lam


def linear_image_check(T, matrices: Sequence, multiplicities: Sequence[int] | None = None,
                       rtol: float = 1e-8) -> InequalityReport:
    """Check D(T M_1 T^T, ..., T M_n T^T) = det(T)^2 D(M_1, ..., M_n).

    The congruence action keeps the arguments symmetric; each of the two
    sides of the product contributes one factor |det T|.
    """
    T = np.asarray(T, dtype=float)
    mats = [as_symmetric(M) for M in matrices]
    n = mats[0].shape[0]
    if T.shape != (n, n):
        raise ValueError(f"T must be {n} x {n}")
    detT = np.linalg.det(T)
    if abs(detT) <= 1e-12 * max(1.0, np.abs(T).max()) ** n:
        raise ValueError("T must be invertible")
    images = [T @ M @ T.T for M in mats]
    images = [(M + M.T) / 2 for M in images]
    lhs = mixed_discriminant(images, multiplicities, clamp=False)
    rhs = detT**2 * mixed_discriminant(mats, multiplicities, clamp=False)
    return identity_report("factdet", lhs, rhs, rtol=rtol,
                           instance={"T": serialize(T), "M": serialize(mats),
                                     "multiplicities": list(multiplicities or [])})


def matrix_to_json(M) -> str:
    A = as_symmetric(M)
    return json.dumps({"n": A.shape[0], "entries": A.ravel().tolist()})


def matrix_from_json(text: str) -> np.ndarray:
    doc = json.loads(text)
    n = int(doc["n"])
    entries = np.asarray(doc["entries"], dtype=float)
    if entries.size != n * n:
        raise ValueError(f"expected {n * n} entries, got {entries.size}")
    return as_symmetric(entries.reshape(n, n))
