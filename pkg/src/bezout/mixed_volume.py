"""Mixed volumes of polytopes.

The default route is the inclusion-exclusion formula

    V(K_1, ..., K_n) = 1/n! * sum_{k=1}^{n} (-1)^(n+k) sum_{i_1<...<i_k} |K_{i_1} + ... + K_{i_k}|

evaluated with repeated bodies grouped: a subset picking ``j_k`` of the
``i_k`` copies of body ``k`` contributes ``prod C(i_k, j_k)`` times the
volume of ``sum_k j_k K_k``. :func:`mixed_volume_interp` recovers the same
number from the Minkowski volume polynomial and is kept as an independent
oracle.
"""
from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .polytope import Polytope, minkowski_sum, minkowski_sum_all, scale, volume
from .report import InequalityReport, identity_report, serialize

__all__ = [
    "NumericalConsistencyError",
    "MAX_DIM",
    "MAX_BODIES",
    "mixed_volume",
    "mixed_volume_interp",
    "homogeneous_coefficients",
    "multinomial",
    "compositions",
    "expansion_identity_check",
]

MAX_DIM = 6
MAX_BODIES = 6
# cancellation noise below this fraction of the largest subset volume is clamped
CLAMP_RTOL = 1e-9


class NumericalConsistencyError(ArithmeticError):
    """A quantity that must be nonnegative came out clearly negative."""


def multinomial(n: int, parts: Sequence[int]) -> int:
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _normalize(bodies: Sequence[Polytope], multiplicities: Sequence[int] | None,
               max_dim: int, max_bodies: int) -> tuple[list[Polytope], list[int], int]:
    bodies = list(bodies)
    if not bodies:
        raise ValueError("need at least one body")
    n = bodies[0].dim
    if any(b.dim != n for b in bodies):
        raise ValueError("all bodies must share one ambient dimension")
    if multiplicities is None:
        multiplicities = [1] * len(bodies)
    mult = [int(i) for i in multiplicities]
    if len(mult) != len(bodies):
        raise ValueError("one multiplicity per body is required")
    if any(i < 0 for i in mult):
        raise ValueError("multiplicities must be nonnegative")
    if sum(mult) != n:
        raise ValueError(f"multiplicities sum to {sum(mult)}, expected n = {n}")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds cap {max_dim}")
    merged: dict[Polytope, int] = {}
    for b, i in zip(bodies, mult):
        if i > 0:
            merged[b] = merged.get(b, 0) + i
    pairs = list(merged.items())
    if len(pairs) > max_bodies:
        raise ValueError(f"{len(pairs)} distinct bodies exceeds cap {max_bodies}")
    return [b for b, _ in pairs], [i for _, i in pairs], n


def _clamp(value: float, reference: float) -> float:
    if value >= 0:
        return value
    if -value <= CLAMP_RTOL * max(reference, 1e-300):
        return 0.0
    raise NumericalConsistencyError(
        f"mixed functional evaluated to {value:.3e} (reference scale {reference:.3e})"
    )


def mixed_volume(bodies: Sequence[Polytope], multiplicities: Sequence[int] | None = None,
                 *, max_dim: int = MAX_DIM, max_bodies: int = MAX_BODIES) -> float:
    """Mixed volume V(K_1[i_1], ..., K_m[i_m]).

    ``multiplicities`` defaults to one copy of each body, in which case
    ``len(bodies)`` must equal the ambient dimension.

    >>> from bezout.polytope import cube
    >>> round(mixed_volume([cube(3)], [3]), 12)
    1.0
    """
    bodies, mult, n = _normalize(bodies, multiplicities, max_dim, max_bodies)
    if len(bodies) == 1:
        return volume(bodies[0])
    total = 0.0
    biggest = 0.0
    for picks in itertools.product(*(range(i + 1) for i in mult)):
        k = sum(picks)
        if k == 0:
            continue
        count = math.prod(math.comb(i, j) for i, j in zip(mult, picks))
        summands = [scale(b, j) for b, j in zip(bodies, picks) if j > 0]
        vol = volume(minkowski_sum_all(summands))
        biggest = max(biggest, vol)
        total += (-1) ** (n + k) * count * vol
    return _clamp(total / math.factorial(n), biggest / math.factorial(n))


def _lattice(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    return [e for e in itertools.product(range(degree + 1), repeat=n_vars) if sum(e) <= degree]


def homogeneous_coefficients(evaluate, n_vars: int, degree: int) -> dict[tuple[int, ...], float]:
    """Coefficients of a homogeneous polynomial recovered from positive samples.

    ``evaluate(t)`` returns the value at a positive tuple ``t`` of length
    ``n_vars``. The last variable is pinned at 1; the others run over the
    integer points ``1 + k`` with ``k >= 0`` and ``|k| <= degree``. That
    lattice is unisolvent for polynomials of total degree ``degree``, so
    the resulting square system has a unique solution. Keys of the
    returned dict are full exponent tuples summing to ``degree``.
    """
    if n_vars == 1:
        return {(degree,): float(evaluate((1.0,)))}
    exps = _lattice(n_vars - 1, degree)
    E = np.array(exps, dtype=float)
    pts = 1.0 + E
    # A[p, q] = prod_k pts[p, k] ** exps[q, k]
    A = np.prod(pts[:, None, :] ** E[None, :, :], axis=2)
    y = np.array([evaluate(tuple(p) + (1.0,)) for p in pts])
    c = np.linalg.solve(A, y)
    return {e + (degree - sum(e),): float(v) for e, v in zip(exps, c)}


def mixed_volume_interp(bodies: Sequence[Polytope], multiplicities: Sequence[int] | None = None,
                        *, max_dim: int = MAX_DIM, max_bodies: int = MAX_BODIES) -> float:
    """Mixed volume read off the polynomial t -> |t_1 K_1 + ... + t_m K_m|.

    The coefficient of ``t^i`` equals ``n!/(i_1!...i_m!) V(K_1[i_1], ...)``.
    """
    bodies, mult, n = _normalize(bodies, multiplicities, max_dim, max_bodies)
    m = len(bodies)

    def evaluate(t):
        return volume(minkowski_sum_all([scale(b, ti) for b, ti in zip(bodies, t)]))

    c = homogeneous_coefficients(evaluate, m, n)[tuple(mult)]
    value = c / multinomial(n, mult)
    return max(value, 0.0) if value > -1e-7 * max(abs(c), 1.0) else value


def expansion_identity_check(A: Polytope, B_list: Sequence[Polytope],
                             rtol: float = 1e-9) -> InequalityReport:
    """Check both multinomial expansions behind the Minkowski-sum inequalities.

    First identity: |A|^(m-1) |B_1 + ... + B_m| equals
    sum_{|i|=n} n!/(i_1!...i_m!) |A|^(m-1) V(B_1[i_1], ..., B_m[i_m]).
    Second identity: prod_k |A + B_k| equals the sum over all
    i in {0..n}^m of prod_k C(n, i_k) V(B_k[i_k], A[n-i_k]).
    """
    B_list = list(B_list)
    if not B_list:
        raise ValueError("B_list must be nonempty")
    n, m = A.dim, len(B_list)
    if any(B.dim != n for B in B_list):
        raise ValueError("all bodies must share one ambient dimension")
    volA = volume(A)
    w = volA ** (m - 1)

    lhs1 = w * volume(minkowski_sum_all(B_list))
    terms1 = [multinomial(n, i) * w * mixed_volume(B_list, i) for i in compositions(n, m)]
    rhs1 = math.fsum(terms1)

    lhs2 = math.prod(volume(minkowski_sum(A, B)) for B in B_list)
    per_body = [[math.comb(n, i) * mixed_volume([B, A], [i, n - i]) for i in range(n + 1)]
                for B in B_list]
    rhs2 = math.fsum(math.prod(row[i] for row, i in zip(per_body, idx))
                     for idx in itertools.product(range(n + 1), repeat=m))

    def rel(a, b):
        return abs(a - b) / max(abs(a), abs(b), 1e-300) if (a or b) else 0.0

    res1, res2 = rel(lhs1, rhs1), rel(lhs2, rhs2)
    report = identity_report(
        "expansion", lhs1, rhs1, rtol=rtol,
        instance={"A": serialize(A), "B": serialize(B_list)},
        extra={"sum_residual": abs(lhs1 - rhs1), "product_residual": abs(lhs2 - rhs2),
               "sum_rel_residual": res1, "product_rel_residual": res2,
               "product_lhs": lhs2, "product_rhs": rhs2},
    )
    report.passed = res1 <= rtol and res2 <= rtol
    return report
