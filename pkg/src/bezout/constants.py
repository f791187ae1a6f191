"""Bound constants for Bezout-type inequalities.

Upper bounds on b_{n,r} (mixed volumes) and on c_{n,m} (Minkowski sums),
and the lower bounds on c_{n,m} from the coordinate-block constructions,
both in exact binomial form and as exponential rates.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np
from scipy import optimize

__all__ = [
    "GOLDEN_RATIO",
    "BBound",
    "BinomLowerBound",
    "LowerRate",
    "BoundTable",
    "b_bound",
    "b_bound_terms",
    "P_m",
    "root_Pm",
    "c_upper_base",
    "c_upper",
    "c_upper_binom",
    "c_lower_binom",
    "c_lower_asymptotic",
    "c_lower_diagonal_max",
    "c_lower_full_max",
    "c_lower_stirling",
    "g_formula",
    "weaker_bounds",
    "bound_table",
]

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


class BBound(NamedTuple):
    value: Fraction
    k: int


def b_bound_terms(n: int, r: int) -> dict[int, Fraction]:
    """2^(k(k-1)/2) n^(r-k) / (r-k)! for k = 1..r."""
    return {k: Fraction(2 ** (k * (k - 1) // 2) * n ** (r - k), math.factorial(r - k))
            for k in range(1, r + 1)}


def b_bound(n: int, r: int) -> BBound:
    """Upper bound on b_{n,r}: the smallest term of :func:`b_bound_terms`.

    Ties go to the smallest k.

    >>> b_bound(3, 2)
    BBound(value=Fraction(2, 1), k=2)
    """
    if not 2 <= r <= n:
        raise ValueError(f"need 2 <= r <= n, got n={n}, r={r}")
    terms = b_bound_terms(n, r)
    k = min(terms, key=lambda j: (terms[j], j))
    return BBound(terms[k], k)


def P_m(x: float, m: int) -> float:
    """(1 - m x)^m - (m - 1)^(m - 1) x^(m - 1) (1 - x)."""
    return (1 - m * x) ** m - (m - 1) ** (m - 1) * x ** (m - 1) * (1 - x)


def root_Pm(m: int, xtol: float = 1e-14, delta: float = 1e-12) -> float:
    """The root of :func:`P_m` inside (0, 1/m), by bisection."""
    if m < 2:
        raise ValueError("m must be at least 2")
    lo, hi = delta, 1 / m - delta
    if np.sign(P_m(lo, m)) == np.sign(P_m(hi, m)):
        raise ArithmeticError(f"P_{m} has no sign change on (0, 1/{m})")
    x = optimize.bisect(P_m, lo, hi, args=(m,), xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    if abs(P_m(x, m)) > 1e-12:
        raise ArithmeticError(f"bisection residual {P_m(x, m):.3e} too large")
    return x


def c_upper_base(m: int) -> float:
    """(1 - x_m) / (1 - m x_m); the golden ratio for m = 2."""
    x = root_Pm(m)
    base = (1 - x) / (1 - m * x)
    if not 1 < base < 2:
        raise ArithmeticError(f"upper-bound base {base} outside (1, 2)")
    return base


def c_upper(n: int, m: int) -> float:
    """Upper bound ((1 - x_m)/(1 - m x_m))^n on c_{n,m}."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    return c_upper_base(m) ** n


def c_upper_binom(n: int, m: int) -> int:
    """max over |i| <= n of min_j C(n - i_j, |i| - i_j).

    This is the exact combinatorial bound that the exponential form of
    :func:`c_upper` estimates from above.
    """
    best = 1
    for i in itertools.product(range(n + 1), repeat=m):
        s = sum(i)
        if s <= n:
            best = max(best, min(math.comb(n - ij, s - ij) for ij in i))
    return best


class BinomLowerBound(NamedTuple):
    value: Fraction
    alpha: tuple[int, ...]
    d: int


def c_lower_binom(n: int, m: int) -> BinomLowerBound:
    """max over alpha in [1, n]^m with d = |alpha| - (m-1) n > 0 of
    prod C(alpha_i, d) / C(n, d)^(m-1).

    Only nondecreasing alpha are visited; the ratio is symmetric in alpha.

    >>> c_lower_binom(3, 2)
    BinomLowerBound(value=Fraction(4, 3), alpha=(2, 2), d=1)
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    best: BinomLowerBound | None = None
    for alpha in itertools.combinations_with_replacement(range(1, n + 1), m):
        d = sum(alpha) - (m - 1) * n
        if d <= 0:
            continue
        value = Fraction(math.prod(math.comb(a, d) for a in alpha), math.comb(n, d) ** (m - 1))
        if best is None or value > best.value:
            best = BinomLowerBound(value, alpha, d)
    if best is None:
        raise ValueError(f"no feasible alpha for n={n}, m={m}")
    return best


class LowerRate(NamedTuple):
    x: float
    y: float
    base: float


def c_lower_asymptotic(m: int) -> LowerRate:
    """Closed-form maximizer of the lower-bound rate function.

    x = (m-1) / (m - ((m-1)/m)^(m-1)), y = m (x - 1) + 1, base = x^m / y.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    x = (m - 1) / (m - ((m - 1) / m) ** (m - 1))
    y = m * (x - 1) + 1
    return LowerRate(x, y, x**m / y)


def _xlogx(t: float) -> float:
    return t * math.log(t) if t > 0 else 0.0


def _log_rate(xs: np.ndarray, m: int) -> float:
    # log f(x_1..x_m) with y = |x| - (m - 1)
    y = float(np.sum(xs)) - (m - 1)
    if y <= 0 or y >= 1 or np.any(xs < y) or np.any(xs > 1):
        return -math.inf
    return ((m - 1) * _xlogx(1 - y) - _xlogx(y)
            + sum(_xlogx(float(xi)) - _xlogx(float(xi) - y) for xi in xs))


def c_lower_diagonal_max(m: int) -> LowerRate:
    """Numeric maximum of the rate function on the diagonal x_1 = ... = x_m."""
    lo = (m - 1) / m
    res = optimize.minimize_scalar(lambda t: -_log_rate(np.full(m, t), m),
                                   bounds=(lo + 1e-12, 1 - 1e-12), method="bounded",
                                   options={"xatol": 1e-12})
    x = float(res.x)
    return LowerRate(x, m * x - (m - 1), math.exp(-float(res.fun)))


def c_lower_full_max(m: int) -> float:
    """Numeric maximum of the rate function over all (x_1, ..., x_m); small m only."""
    start = np.full(m, c_lower_asymptotic(m).x) + np.linspace(-0.02, 0.02, m)
    res = optimize.minimize(lambda v: -_log_rate(v, m), start, method="Nelder-Mead",
                            options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000})
    return math.exp(-float(res.fun))


def g_formula(m: int) -> float:
    """[1 - (1/(m-1)) ((m-1)/m)^m]^(m-1), the reciprocal of the lower-bound rate."""
    if m < 2:
        raise ValueError("m must be at least 2")
    g = (1 - ((m - 1) / m) ** m / (m - 1)) ** (m - 1)
    base = c_lower_asymptotic(m).base
    if not math.isclose(g * base, 1.0, rel_tol=1e-12):
        raise ArithmeticError(f"g({m}) * rate = {g * base} != 1")
    return g


def c_lower_stirling(n: int, m: int) -> float:
    """e / sqrt(2 pi n (e - 1)) * g^-(n + 1/2)."""
    return math.e / math.sqrt(2 * math.pi * n * (math.e - 1)) * g_formula(m) ** -(n + 0.5)


def weaker_bounds(n: int, m: int) -> dict[str, float]:
    """Simpler upper bounds on c_{n,m}.

    Only the compound-interest bound is asserted to dominate :func:`c_upper`;
    the central binomial is reported as is.
    """
    e_bound = (1 + 1 / (m - 1)) ** ((m - 1) * n)
    central = math.comb(n, n // 2)
    cu = c_upper(n, m)
    if cu > e_bound * (1 + 1e-12):
        raise ArithmeticError(f"c_upper {cu} exceeds e-bound {e_bound}")
    return {"e_bound": e_bound, "central_binom": float(central)}


@dataclass
class BoundTable:
    n: int
    m: int
    r: int
    b_upper: float
    b_argmin_k: int
    x_m: float
    root_residual: float
    c_upper_base: float
    c_upper: float
    c_lower_base: float
    c_lower_binom: str
    c_lower_alpha: list[int]
    c_lower_d: int
    g: float
    c_lower_stirling: float
    weaker_bounds: dict[str, float] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BoundTable":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        rows = [(k, v) for k, v in self.to_dict().items() if k not in ("weaker_bounds", "notes")]
        rows += [(f"weaker.{k}", v) for k, v in self.weaker_bounds.items()]
        width = max(len(k) for k, _ in rows)
        lines = [f"{k:<{width}}  {v}" for k, v in rows]
        lines += [f"# {k}: {v}" for k, v in self.notes.items()]
        return "\n".join(lines)


def bound_table(n: int, m: int, r: int) -> BoundTable:
    b = b_bound(n, r)
    x = root_Pm(m)
    low = c_lower_binom(n, m)
    rate = c_lower_asymptotic(m)
    return BoundTable(
        n=n, m=m, r=r,
        b_upper=float(b.value), b_argmin_k=b.k,
        x_m=x, root_residual=abs(P_m(x, m)),
        c_upper_base=c_upper_base(m), c_upper=c_upper(n, m),
        c_lower_base=rate.base,
        c_lower_binom=str(low.value), c_lower_alpha=list(low.alpha), c_lower_d=low.d,
        g=g_formula(m), c_lower_stirling=c_lower_stirling(n, m),
        weaker_bounds=weaker_bounds(n, m),
        notes={
            "b_upper": f"min over k of 2^(k(k-1)/2) n^(r-k)/(r-k)!, attained at k={b.k}",
            "x_m": "bisection on (0, 1/m)",
            "c_lower_binom": "denominator C(n,d)^(m-1); exhaustive search over nondecreasing alpha",
            "c_lower_base": "x^m/y = 1/g",
        },
    )
