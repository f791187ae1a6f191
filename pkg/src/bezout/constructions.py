"""Coordinate-block constructions that bound c_{n,m} from below.

For integers alpha_1..alpha_m in [1, n] with d = |alpha| - (m-1) n > 0,
the first n - d coordinates are cut into consecutive blocks J_i of size
n - alpha_i and the last d coordinates form the common block. Body B_i is
the unit cube on J_i, E_i is the coordinate subspace off J_i, and the
intersection of all E_i is spanned by the common block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polytope import (
    Polytope,
    box_inf,
    canonical_hull,
    cross_polytope,
    minkowski_sum_all,
    project,
    scale,
    segment_sum,
    volume,
)
from .report import InequalityReport, identity_report

__all__ = [
    "HypInstance",
    "CorBody",
    "AsymptoticResult",
    "coordinate_blocks",
    "build_hyp_instance",
    "asymptotic_ratio",
    "build_cor_body",
    "cor_ratio_closed_form",
    "verify_cor_ratio",
    "sum_bezout_construction",
    "feasible_alphas",
]


def coordinate_blocks(n: int, alpha: Sequence[int]) -> tuple[list[list[int]], list[int], int]:
    """Blocks J_1..J_m (0-based) of sizes n - alpha_i, the common block, and d."""
    alpha = [int(a) for a in alpha]
    m = len(alpha)
    if m < 1 or any(not 1 <= a <= n for a in alpha):
        raise ValueError(f"each alpha_i must lie in [1, {n}]")
    d = sum(alpha) - (m - 1) * n
    if d <= 0:
        raise ValueError(f"alpha={tuple(alpha)} gives d={d}; need d > 0")
    blocks, start = [], 0
    for a in alpha:
        blocks.append(list(range(start, start + n - a)))
        start += n - a
    return blocks, list(range(n - d, n)), d


def feasible_alphas(n: int, m: int):
    """Nondecreasing alpha in [1, n]^m with d > 0."""
    from itertools import combinations_with_replacement

    for alpha in combinations_with_replacement(range(1, n + 1), m):
        if sum(alpha) - (m - 1) * n > 0:
            yield alpha


@dataclass
class HypInstance:
    n: int
    alpha: tuple[int, ...]
    d: int
    A: Polytope
    B_list: list[Polytope]
    E_list: list[list[int]]
    E_cap: list[int]
    blocks: list[list[int]] = field(default_factory=list)


def build_hyp_instance(n: int, alpha: Sequence[int], A: Polytope) -> HypInstance:
    """Segment sums B_i on the blocks J_i and the subspaces E_i = span{e_k : k not in J_i}."""
    if A.dim != n:
        raise ValueError("A must live in R^n")
    if A.affine_dim != n:
        raise ValueError("A must be full-dimensional")
    blocks, common, d = coordinate_blocks(n, alpha)
    B_list = [segment_sum(J, n) for J in blocks]
    E_list = [[k for k in range(n) if k not in J] for J in blocks]
    return HypInstance(n, tuple(int(a) for a in alpha), d, A, B_list, E_list, common, blocks)


@dataclass
class AsymptoticResult:
    """Extrapolated large-t limits against their projection volumes.

    ``deviation`` is the relative error of the extrapolated limit of
    |A + t B_1 + ... + t B_m| / t^(nm - |alpha|) against |P_{E_cap} A|;
    ``raw_deviations`` are the unextrapolated errors along the grid.
    """

    deviation: float
    limit: float
    target: float
    raw_deviations: list[float]
    body_deviations: list[float]
    t_grid: list[float]


def _extrapolate(t: np.ndarray, values: np.ndarray, degree: int) -> float:
    # values(t) is a polynomial of the given degree in s = 1/t
    s = 1.0 / t
    deg = min(degree, len(t) - 1)
    coeffs = np.polynomial.polynomial.polyfit(s, values, deg)
    return float(coeffs[0])


def asymptotic_ratio(inst: HypInstance, t_grid: Sequence[float]) -> AsymptoticResult:
    t = np.asarray(t_grid, dtype=float)
    if len(t) < 3 or np.any(np.diff(t) <= 0) or t[0] <= 0:
        raise ValueError("t_grid must hold at least 3 increasing positive values")
    n, alpha = inst.n, inst.alpha
    m = len(alpha)
    A = inst.A

    def rel(a, b):
        return abs(a - b) / abs(b)

    deg = n * m - sum(alpha)
    target = volume(project(A, inst.E_cap))
    ratios = np.array([volume(minkowski_sum_all([A, *[scale(B, ti) for B in inst.B_list]])) / ti**deg
                       for ti in t])
    limit = _extrapolate(t, ratios, deg)

    body_dev = []
    for B, E, a in zip(inst.B_list, inst.E_list, alpha):
        k = n - a
        vals = np.array([volume(minkowski_sum_all([A, scale(B, ti)])) / ti**k for ti in t])
        body_dev.append(rel(_extrapolate(t, vals, k), volume(project(A, E)) if E else 1.0))
    return AsymptoticResult(rel(limit, target), limit, target,
                            [rel(r, target) for r in ratios], body_dev, t.tolist())


@dataclass
class CorBody:
    n: int
    alpha: tuple[int, ...]
    d: int
    A: Polytope
    cross_polytopes: list[Polytope]
    box: Polytope
    E_list: list[list[int]]
    E_cap: list[int]
    blocks: list[list[int]]
    closed_forms: dict[str, object]


def build_cor_body(n: int, alpha: Sequence[int]) -> CorBody:
    """A = conv(B_1(1) + ... + B_1(m), B_inf(d)) with cross-polytopes on the blocks."""
    blocks, common, d = coordinate_blocks(n, alpha)
    alpha = tuple(int(a) for a in alpha)
    crosses = [cross_polytope(J, n) for J in blocks]
    box = box_inf(common, n)
    A = canonical_hull(np.vstack([minkowski_sum_all(crosses).vertices, box.vertices]))
    E_list = [[k for k in range(n) if k not in J] for J in blocks]

    cross_vol = [Fraction(2 ** len(J), math.factorial(len(J))) for J in blocks]
    box_vol = Fraction(2**d)
    proj_vol = [math.prod(cv for k, cv in enumerate(cross_vol) if k != i) * box_vol / math.comb(a, d)
                for i, a in enumerate(alpha)]
    closed = {
        "cross_volumes": cross_vol,
        "box_volume": box_vol,
        "A_volume": math.prod(cross_vol) * box_vol / math.comb(n, d),
        "cap_projection_volume": box_vol,
        "projection_volumes": proj_vol,
    }
    return CorBody(n, alpha, d, A, crosses, box, E_list, common, blocks, closed)


def cor_ratio_closed_form(n: int, alpha: Sequence[int]) -> Fraction:
    """prod C(alpha_i, d) / C(n, d)^(m-1)."""
    _, _, d = coordinate_blocks(n, alpha)
    m = len(alpha)
    return Fraction(math.prod(math.comb(a, d) for a in alpha), math.comb(n, d) ** (m - 1))


def verify_cor_ratio(n: int, alpha: Sequence[int], rtol: float = 1e-9) -> InequalityReport:
    """Compare the projection-volume ratio of :func:`build_cor_body` with its closed form.

    ``extra`` records each directly computed volume next to its closed form;
    the report passes only if all of them agree to ``rtol``.
    """
    body = build_cor_body(n, alpha)
    m = len(body.alpha)
    cf = body.closed_forms
    vol_A = volume(body.A)
    vol_cap = volume(project(body.A, body.E_cap))
    vol_proj = [volume(project(body.A, E)) if len(E) < n else vol_A for E in body.E_list]
    direct = vol_A ** (m - 1) * vol_cap / math.prod(vol_proj)
    closed = cor_ratio_closed_form(n, alpha)
    pairs = [(vol_A, cf["A_volume"]), (vol_cap, cf["cap_projection_volume"])]
    pairs += list(zip(vol_proj, cf["projection_volumes"]))
    pairs += [(volume(project(c, J)) if J else 1.0, cv)
              for c, J, cv in zip(body.cross_polytopes, body.blocks, cf["cross_volumes"])]
    volumes_ok = all(math.isclose(a, float(b), rel_tol=rtol) for a, b in pairs)
    report = identity_report("cor_ratio", direct, float(closed), rtol=rtol, atol=0.0,
                             instance={"n": n, "alpha": list(body.alpha)},
                             extra={"d": body.d, "closed_form": str(closed),
                                    "volumes": [[a, float(b)] for a, b in pairs]})
    report.passed = report.passed and volumes_ok
    return report


def sum_bezout_construction(n: int, alpha: Sequence[int], t: float) -> tuple[Polytope, list[Polytope]]:
    """A from :func:`build_cor_body` with B_i = t * (unit cube on J_i).

    The Minkowski-sum ratio |A|^(m-1)|A + sum B_i| / prod |A + B_i| tends to
    :func:`cor_ratio_closed_form` as t grows.
    """
    body = build_cor_body(n, alpha)
    inst = build_hyp_instance(n, alpha, body.A)
    return body.A, [scale(B, t) for B in inst.B_list]
