import math
from fractions import Fraction

import pytest

from bezout.constants import (
    GOLDEN_RATIO,
    P_m,
    BoundTable,
    b_bound,
    b_bound_terms,
    bound_table,
    c_lower_asymptotic,
    c_lower_binom,
    c_lower_diagonal_max,
    c_lower_full_max,
    c_lower_stirling,
    c_upper,
    c_upper_base,
    c_upper_binom,
    g_formula,
    root_Pm,
    weaker_bounds,
)


def test_b_bound():
    assert b_bound(3, 2).value == 2 and b_bound(3, 2).k == 2
    assert b_bound_terms(3, 2) == {1: 3, 2: 2}
    for n in range(2, 9):
        for r in range(2, n + 1):
            b = b_bound(n, r)
            assert b.value == min(b_bound_terms(n, r).values())
            assert b.value >= 1
    with pytest.raises(ValueError):
        b_bound(3, 4)
    with pytest.raises(ValueError):
        b_bound(3, 1)


def test_b_bound_tie_goes_to_smallest_k():
    # n = 2, r = 2: terms are 2 (k=1) and 2 (k=2)
    assert b_bound(2, 2).k == 1


def test_root_m2_and_golden_base():
    x = root_Pm(2)
    assert x == pytest.approx((5 - math.sqrt(5)) / 10, abs=1e-12)
    assert c_upper_base(2) == pytest.approx(GOLDEN_RATIO, abs=1e-12)
    assert abs(P_m(x, 2)) < 1e-12


def test_upper_bases():
    assert c_upper_base(3) < 1.755
    bases = [c_upper_base(m) for m in range(2, 11)]
    assert all(1 < b < 2 for b in bases)
    assert bases == sorted(bases)


@pytest.mark.parametrize("m", range(2, 7))
def test_root_in_interval(m):
    x = root_Pm(m)
    assert 0 < x < 1 / m and abs(P_m(x, m)) <= 1e-12


def test_c_upper_dominates_binomial_form():
    for n in range(1, 9):
        for m in (2, 3):
            assert c_upper_binom(n, m) <= c_upper(n, m) * (1 + 1e-12)
            assert c_upper(n, m) <= weaker_bounds(n, m)["e_bound"] * (1 + 1e-12)


def test_c_lower_binom_values():
    assert c_lower_binom(3, 2).value == Fraction(4, 3)
    assert c_lower_binom(3, 2).alpha == (2, 2)
    assert c_lower_binom(4, 2).value == Fraction(3, 2)
    assert c_lower_binom(2, 2).value == 1
    assert c_lower_binom(4, 3).value == Fraction(27, 16)


def test_lower_below_upper():
    for n in range(2, 12):
        for m in (2, 3):
            assert float(c_lower_binom(n, m).value) <= c_upper(n, m)


def test_asymptotic_rate():
    assert c_lower_asymptotic(2).base == pytest.approx(4 / 3, abs=1e-12)
    assert c_lower_asymptotic(3).base == pytest.approx(729 / 529, abs=1e-12)
    for m in range(2, 6):
        rate = c_lower_asymptotic(m)
        assert g_formula(m) * rate.base == pytest.approx(1.0, abs=1e-12)
        assert c_lower_diagonal_max(m).base == pytest.approx(rate.base, rel=1e-9)
        assert rate.base < c_upper_base(m)


@pytest.mark.parametrize("m", [2, 3])
def test_full_maximum_is_on_diagonal(m):
    assert c_lower_full_max(m) == pytest.approx(c_lower_asymptotic(m).base, rel=1e-8)


def test_binomial_bound_approaches_stirling_form():
    n = 30
    approx = 2 / math.sqrt(30 * math.pi) * (4 / 3) ** 30
    ratio = float(c_lower_binom(n, 2).value) / approx
    assert 1 / 1.2 <= ratio <= 1.2
    assert c_lower_stirling(n, 2) == pytest.approx(float(c_lower_binom(n, 2).value), rel=0.2)


def test_bound_table():
    t = bound_table(3, 2, 2)
    assert t.b_upper == 2 and t.c_lower_binom == "4/3"
    assert t.c_upper_base == pytest.approx(GOLDEN_RATIO)
    assert BoundTable.from_json(t.to_json()) == t
    assert "c_lower_binom" in t.to_text()
    assert bound_table(4, 3, 3).c_upper_base < 1.755
    with pytest.raises(ValueError):
        bound_table(3, 2, 5)
