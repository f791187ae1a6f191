from fractions import Fraction

import numpy as np
import pytest

from bezout.constants import c_lower_binom
from bezout.constructions import (
    asymptotic_ratio,
    build_cor_body,
    build_hyp_instance,
    coordinate_blocks,
    cor_ratio_closed_form,
    feasible_alphas,
    sum_bezout_construction,
    verify_cor_ratio,
)
from bezout.inequalities import check_sum_bezout
from bezout.polytope import cube, segment, volume

from conftest import polys


def test_blocks():
    blocks, common, d = coordinate_blocks(3, (2, 2))
    assert blocks == [[0], [1]] and common == [2] and d == 1
    blocks, common, d = coordinate_blocks(4, (3, 3, 3))
    assert blocks == [[0], [1], [2]] and common == [3] and d == 1
    with pytest.raises(ValueError):
        coordinate_blocks(3, (1, 1))
    with pytest.raises(ValueError):
        coordinate_blocks(3, (4, 2))


def test_hyp_instance():
    inst = build_hyp_instance(3, (2, 2), cube(3))
    assert inst.B_list == [segment(0, 3), segment(1, 3)]
    assert inst.E_cap == [2] and inst.E_list == [[1, 2], [0, 2]]
    single = build_hyp_instance(3, (3,), cube(3))
    assert single.B_list[0].n_vertices == 1 and single.E_list == [[0, 1, 2]]
    with pytest.raises(ValueError):
        build_hyp_instance(3, (1, 1), cube(3))


def test_asymptotic_ratio_converges():
    A = polys(3, 1, 2)[0]
    res = asymptotic_ratio(build_hyp_instance(3, (2, 2), A), [10, 20, 50, 100])
    assert res.deviation <= 1e-2
    assert res.raw_deviations[-1] <= 1e-1
    assert all(b <= a for a, b in zip(res.raw_deviations, res.raw_deviations[1:]))
    assert max(res.body_deviations) <= 1e-2
    with pytest.raises(ValueError):
        asymptotic_ratio(build_hyp_instance(3, (2, 2), A), [10, 5, 100])


@pytest.mark.parametrize("n,alpha,expected", [
    (3, (2, 2), Fraction(4, 3)),
    (2, (2, 2), Fraction(1)),
    (4, (3, 3), Fraction(3, 2)),
    (4, (3, 3, 3), Fraction(27, 16)),
])
def test_cor_ratio_values(n, alpha, expected):
    assert cor_ratio_closed_form(n, alpha) == expected
    rep = verify_cor_ratio(n, alpha)
    assert rep.passed and rep.lhs == pytest.approx(float(expected), rel=1e-9)


def test_every_feasible_alpha_up_to_four():
    for n in range(2, 5):
        for m in (2, 3):
            for alpha in feasible_alphas(n, m):
                assert verify_cor_ratio(n, alpha).passed, (n, alpha)


def test_closed_form_volumes():
    body = build_cor_body(3, (2, 2))
    assert volume(body.A) == pytest.approx(8 / 3)
    assert body.closed_forms["A_volume"] == Fraction(8, 3)


def test_best_alpha_matches_lower_bound():
    for n in range(2, 6):
        best = max(cor_ratio_closed_form(n, a) for a in feasible_alphas(n, 2))
        assert best == c_lower_binom(n, 2).value


def test_sum_bezout_limit():
    raws = []
    for t in (1e3, 1e5, 1e7):
        A, B = sum_bezout_construction(3, (2, 2), t)
        raws.append(check_sum_bezout(A, B).extra["raw_ratio"])
    assert raws == sorted(raws)
    assert raws[-1] >= 4 / 3 - 1e-6 and raws[-1] <= 4 / 3 + 1e-9
