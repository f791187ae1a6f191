"""Bezout-type inequalities as checkable predicates, plus random instances.

Every ``check_*`` function evaluates both sides on concrete bodies (or
matrices) and returns an :class:`~bezout.report.InequalityReport`. The
pass rule is ``lhs <= rhs * (1 + 1e-9) + 1e-12``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import b_bound, c_upper
from .discriminant import as_symmetric, mixed_discriminant
from .mixed_volume import mixed_volume, multinomial
from .polytope import (
    Polytope,
    canonical_hull,
    cube,
    minkowski_sum,
    minkowski_sum_all,
    scale,
    segment,
    simplex,
    volume,
)
from .report import ABS_TOL, REL_TOL, InequalityReport, inequality_report, serialize

__all__ = [
    "InstanceGenConfig",
    "random_polytope",
    "random_multi_index",
    "check_fenchel",
    "check_xiao",
    "check_gx",
    "check_gxv",
    "check_cor_itxiao",
    "cor_itxiao_coefficient",
    "check_gen_fenchel",
    "check_bezout_simplex",
    "check_cube_violation",
    "check_bnr_bound",
    "check_ruzsa_convex",
    "check_sum_bezout",
]


@dataclass
class InstanceGenConfig:
    n: int
    m: int = 2
    vertex_count: int | None = None
    psd_eps: float = 1e-6
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def random_polytope(n: int, rng: np.random.Generator, vertex_count: int | None = None,
                    max_tries: int = 100) -> Polytope:
    """Hull of ``vertex_count`` uniform points in [-1, 1]^n, redrawn until full-dimensional."""
    k = n + 3 if vertex_count is None else vertex_count
    for _ in range(max_tries):
        P = canonical_hull(rng.uniform(-1.0, 1.0, size=(k, n)))
        if P.affine_dim == n:
            return P
    raise RuntimeError(f"no full-dimensional hull of {k} points in R^{n} after {max_tries} tries")


def random_multi_index(n: int, m: int, rng: np.random.Generator, total: int | None = None,
                       positive: bool = False) -> tuple[int, ...]:
    """Uniformly chosen (i_1, ..., i_m) with |i| = total (random total <= n if None)."""
    lo = m if positive else 0
    if total is None:
        total = int(rng.integers(lo, n + 1))
    if total < lo:
        raise ValueError("total too small for a positive multi-index")
    # stars and bars
    free = total - lo
    bars = np.sort(rng.choice(free + m - 1, size=m - 1, replace=False)) if m > 1 else np.array([], int)
    edges = np.concatenate([[-1], bars, [free + m - 1]])
    parts = np.diff(edges) - 1
    return tuple(int(p) + (1 if positive else 0) for p in parts)


def _V(*pairs) -> float:
    """Mixed volume of (body, multiplicity) pairs; zero multiplicities are dropped."""
    bodies = [b for b, i in pairs if i > 0]
    mult = [i for _, i in pairs if i > 0]
    return mixed_volume(bodies, mult)


def _D(*pairs) -> float:
    mats = [M for M, i in pairs if i > 0]
    mult = [i for _, i in pairs if i > 0]
    return mixed_discriminant(mats, mult)


def _same_dim(bodies: Sequence[Polytope]) -> int:
    n = bodies[0].dim
    if any(b.dim != n for b in bodies):
        raise ValueError("all bodies must share one ambient dimension")
    return n


def _check_index(i: Sequence[int], m: int, n: int) -> tuple[int, ...]:
    i = tuple(int(v) for v in i)
    if len(i) != m:
        raise ValueError(f"multi-index has {len(i)} entries, expected {m}")
    if any(v < 0 for v in i) or sum(i) > n:
        raise ValueError(f"invalid multi-index {i} for n = {n}")
    return i


def check_fenchel(A, B, C, K_list, **tol) -> InequalityReport:
    """V(A[2], K) V(B, C, K) <= 2 V(A, B, K) V(A, C, K), K = (K_1, ..., K_{n-2})."""
    K_list = list(K_list)
    n = _same_dim([A, B, C, *K_list])
    if len(K_list) != n - 2:
        raise ValueError(f"need n - 2 = {n - 2} bodies K, got {len(K_list)}")
    K = [(k, 1) for k in K_list]
    lhs = _V((A, 2), *K) * _V((B, 1), (C, 1), *K)
    rhs = 2 * _V((A, 1), (B, 1), *K) * _V((A, 1), (C, 1), *K)
    return inequality_report("fenchel", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B), "C": serialize(C),
                                       "K": serialize(K_list)})


def check_xiao(A, B, M_list, k: int, **tol) -> InequalityReport:
    """det(A) D(B[k], M_1..M_{n-k}) <= C(n,k) D(A[n-k], B[k]) D(A[k], M_1..M_{n-k})."""
    A, B = as_symmetric(A), as_symmetric(B)
    n = A.shape[0]
    M_list = [as_symmetric(M) for M in M_list]
    if len(M_list) != n - k or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n and n - k = {n - k} matrices M")
    M = [(Mj, 1) for Mj in M_list]
    lhs = np.linalg.det(A) * _D((B, k), *M)
    rhs = math.comb(n, k) * _D((A, n - k), (B, k)) * _D((A, k), *M)
    return inequality_report("xiao", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B), "M": serialize(M_list), "k": k})


def check_gx(A, B_list, M_list, i: Sequence[int], **tol) -> InequalityReport:
    """Mixed-discriminant inequality

    n!/(i_1!...i_m!(n-|i|)!) det(A)^m D(B_1[i_1], ..., B_m[i_m], M_1, ..., M_{n-|i|})
        <= C(n,|i|) D(M_1, ..., M_{n-|i|}, A[|i|]) prod_k C(n,i_k) D(B_k[i_k], A[n-i_k]).
    """
    A = as_symmetric(A)
    n = A.shape[0]
    B_list = [as_symmetric(B) for B in B_list]
    M_list = [as_symmetric(M) for M in M_list]
    i = _check_index(i, len(B_list), n)
    s = sum(i)
    if len(M_list) != n - s:
        raise ValueError(f"need n - |i| = {n - s} matrices M, got {len(M_list)}")
    m = len(B_list)
    M = [(Mj, 1) for Mj in M_list]
    lhs = (multinomial(n, (*i, n - s)) * np.linalg.det(A) ** m
           * _D(*zip(B_list, i), *M))
    rhs = math.comb(n, s) * _D(*M, (A, s))
    for B, ik in zip(B_list, i):
        rhs *= math.comb(n, ik) * _D((B, ik), (A, n - ik))
    return inequality_report("gx", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list),
                                       "M": serialize(M_list), "i": list(i)})


def check_gxv(A, B_list, K_list, i: Sequence[int], **tol) -> InequalityReport:
    """Mixed-volume analogue of :func:`check_gx` with |A|^m on the left."""
    B_list, K_list = list(B_list), list(K_list)
    n = _same_dim([A, *B_list, *K_list])
    i = _check_index(i, len(B_list), n)
    s = sum(i)
    if len(K_list) != n - s:
        raise ValueError(f"need n - |i| = {n - s} bodies K, got {len(K_list)}")
    m = len(B_list)
    K = [(k, 1) for k in K_list]
    lhs = multinomial(n, (*i, n - s)) * volume(A) ** m * _V(*zip(B_list, i), *K)
    rhs = math.comb(n, s) * _V(*K, (A, s))
    for B, ik in zip(B_list, i):
        rhs *= math.comb(n, ik) * _V((B, ik), (A, n - ik))
    return inequality_report("gxv", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list),
                                       "K": serialize(K_list), "i": list(i)})


def cor_itxiao_coefficient(n: int, i: Sequence[int], j: int) -> float:
    """n! (|i| - i_j)! / (i_1! ... i_m! (n - i_j)!)."""
    s = sum(i)
    num = math.factorial(n) * math.factorial(s - i[j])
    den = math.prod(math.factorial(v) for v in i) * math.factorial(n - i[j])
    return num / den


def check_cor_itxiao(A, B_list, i: Sequence[int], j: int, **tol) -> InequalityReport:
    """coef(n, i, j) |A|^(m-1) V(B_1[i_1], ..., B_m[i_m], A[n-|i|])
    <= prod_k C(n, i_k) V(B_k[i_k], A[n-i_k]).  ``j`` is a 0-based slot."""
    B_list = list(B_list)
    n = _same_dim([A, *B_list])
    m = len(B_list)
    i = _check_index(i, m, n)
    if not 0 <= j < m:
        raise ValueError(f"slot j={j} out of range")
    s = sum(i)
    lhs = cor_itxiao_coefficient(n, i, j) * volume(A) ** (m - 1) * _V(*zip(B_list, i), (A, n - s))
    rhs = math.prod(math.comb(n, ik) * _V((B, ik), (A, n - ik)) for B, ik in zip(B_list, i))
    return inequality_report("cor_itxiao", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list), "i": list(i), "j": j})


def check_gen_fenchel(A, B_list, **tol) -> tuple[InequalityReport, InequalityReport]:
    """Two extensions of Fenchel's inequality to m bodies B_1..B_m:

    |A| V(B_1..B_m, A[n-m]) <= 2^(m-1) V(B_1..B_{m-1}, A[n-m+1]) V(B_m, A[n-1])
    |A|^(m-1) V(B_1..B_m, A[n-m]) <= 2^(m(m-1)/2) prod_i V(B_i, A[n-1])
    """
    B_list = list(B_list)
    n = _same_dim([A, *B_list])
    m = len(B_list)
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n bodies")
    volA = volume(A)
    full = _V(*[(B, 1) for B in B_list], (A, n - m))
    lhs1 = volA * full
    rhs1 = 2 ** (m - 1) * _V(*[(B, 1) for B in B_list[:-1]], (A, n - m + 1)) * _V((B_list[-1], 1), (A, n - 1))
    lhs2 = volA ** (m - 1) * full
    rhs2 = 2 ** (m * (m - 1) // 2) * math.prod(_V((B, 1), (A, n - 1)) for B in B_list)
    inst = {"A": serialize(A), "B": serialize(B_list)}
    return (inequality_report("gen_fenchel_iterated", lhs1, rhs1, instance=inst, **tol),
            inequality_report("gen_fenchel_product", lhs2, rhs2, instance=inst, **tol))


def _bezout_sides(A, B_list) -> tuple[float, float]:
    n = A.dim
    r = len(B_list)
    lhs = volume(A) ** (r - 1) * _V(*[(B, 1) for B in B_list], (A, n - r))
    rhs = math.prod(_V((B, 1), (A, n - 1)) for B in B_list)
    return lhs, rhs


def check_bezout_simplex(P_list, **tol) -> InequalityReport:
    """|D|^(r-1) V(P_1..P_r, D[n-r]) <= prod V(P_i, D[n-1]) for the standard simplex D."""
    P_list = list(P_list)
    n = _same_dim(P_list)
    r = len(P_list)
    if not 2 <= r <= n:
        raise ValueError("need 2 <= r <= n")
    lhs, rhs = _bezout_sides(simplex(n), P_list)
    return inequality_report("bezout_simplex", lhs, rhs, **tol,
                             instance={"P": serialize(P_list)})


def check_cube_violation(t: float = 1.0, **tol) -> InequalityReport:
    """The simplex inequality with the unit square in place of the simplex.

    Fixed instance n = r = 2, A = t [0,1]^2, B_i = t [0, e_i]; the report is
    expected to fail with ratio 2.
    """
    A = scale(cube(2), t)
    B_list = [scale(segment(0, 2), t), scale(segment(1, 2), t)]
    lhs, rhs = _bezout_sides(A, B_list)
    return inequality_report("cube_violation", lhs, rhs, **tol,
                             instance={"t": t}, extra={"expected_pass": False})


def check_bnr_bound(A, B_list, **tol) -> InequalityReport:
    """|A|^(r-1) V(B_1..B_r, A[n-r]) <= b(n, r) prod V(B_i, A[n-1])."""
    B_list = list(B_list)
    n = _same_dim([A, *B_list])
    r = len(B_list)
    b = b_bound(n, r)
    lhs, prod = _bezout_sides(A, B_list)
    return inequality_report("bnr_bound", lhs, float(b.value) * prod, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list)},
                             extra={"b_bound": float(b.value), "argmin_k": b.k,
                                    "raw_ratio": lhs / prod if prod > 0 else math.nan})


def check_ruzsa_convex(A, B_list, **tol) -> InequalityReport:
    """|A|^(m-1) |B_1 + ... + B_m| <= prod |A + B_k|."""
    B_list = list(B_list)
    _same_dim([A, *B_list])
    m = len(B_list)
    lhs = volume(A) ** (m - 1) * volume(minkowski_sum_all(B_list))
    rhs = math.prod(volume(minkowski_sum(A, B)) for B in B_list)
    return inequality_report("ruzsa_convex", lhs, rhs, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list)})


def check_sum_bezout(A, B_list, **tol) -> InequalityReport:
    """|A|^(m-1) |A + B_1 + ... + B_m| <= c_upper(n, m) prod |A + B_k|.

    ``extra["raw_ratio"]`` is the ratio without the constant, a sample
    from below of the best constant c_{n,m}.
    """
    B_list = list(B_list)
    n = _same_dim([A, *B_list])
    m = len(B_list)
    c = c_upper(n, m)
    lhs = volume(A) ** (m - 1) * volume(minkowski_sum_all([A, *B_list]))
    prod = math.prod(volume(minkowski_sum(A, B)) for B in B_list)
    return inequality_report("sum_bezout", lhs, c * prod, **tol,
                             instance={"A": serialize(A), "B": serialize(B_list)},
                             extra={"c_upper": c, "raw_ratio": lhs / prod if prod > 0 else math.nan})
