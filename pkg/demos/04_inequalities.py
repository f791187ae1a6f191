"""The inequality suite on hand-made and random instances.

Each check returns a report with both sides, their ratio and the pass flag.
The cube check is meant to fail: the simplex inequality does not survive
replacing the simplex by a square.
"""
import numpy as np

from bezout.discriminant import random_psd
from bezout.inequalities import (
    check_bezout_simplex,
    check_bnr_bound,
    check_cube_violation,
    check_fenchel,
    check_gx,
    check_gxv,
    check_ruzsa_convex,
    check_sum_bezout,
    random_polytope,
)
from bezout.polytope import cross_polytope, cube, point, segment, simplex


def show(r):
    print(f"  {r.name:<16} lhs={r.lhs:<12.6g} rhs={r.rhs:<12.6g} ratio={r.ratio:.6f}  {'pass' if r.passed else 'FAIL'}")


print("hand cases")
show(check_fenchel(cube(2), segment(0, 2), segment(1, 2), []))
show(check_gxv(cube(2), [cross_polytope([0, 1], 2)], [cross_polytope([0, 1], 2)], (1,)))
show(check_bezout_simplex([segment(0, 2), segment(1, 2)]))
show(check_bezout_simplex([simplex(3)] * 3))
show(check_cube_violation())
show(check_ruzsa_convex(cube(2), [point(2), point(2)]))

rng = np.random.default_rng(11)
A, B1, B2, C = (random_polytope(3, rng) for _ in range(4))
print("random bodies in R^3")
show(check_fenchel(A, B1, B2, [C]))
show(check_bnr_bound(A, [B1, B2]))
show(check_ruzsa_convex(A, [B1, B2]))
r = check_sum_bezout(A, [B1, B2])
show(r)
print(f"  raw ratio without the constant: {r.extra['raw_ratio']:.6f}")

M = [random_psd(3, rng, eps=0.0) for _ in range(4)]
print("random PSD matrices")
show(check_gx(M[0], [M[1], M[2]], [M[3]], (1, 1)))
