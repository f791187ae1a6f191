"""Mixed discriminants of symmetric matrices.

D(M_1, ..., M_n) is the polarization of the determinant. For diagonal
matrices n! D is a permanent; restricting to principal submatrices gives
the expansion used for the mixed-discriminant inequality.
"""
import itertools
import math

import numpy as np

from bezout.discriminant import (
    linear_image_check,
    mixed_discriminant,
    mixed_discriminant_interp,
    random_psd,
    restrict,
    simultaneous_diagonalize,
)

rng = np.random.default_rng(0)
A, B, C = (random_psd(3, rng) for _ in range(3))
print("D(A[3]) =", mixed_discriminant([A], [3]), " det(A) =", np.linalg.det(A))
print("D(A, B, C): polarization", mixed_discriminant([A, B, C]), " interpolation", mixed_discriminant_interp([A, B, C]))

lam = np.array([1.0, 2.0, 3.0, 6.0])
print("D(I[3], diag(lam)) =", mixed_discriminant([np.eye(4), np.diag(lam)], [3, 1]), " mean(lam) =", lam.mean())

rows = rng.uniform(0, 1, (3, 3))
perm = sum(math.prod(rows[i][p[i]] for i in range(3)) for p in itertools.permutations(range(3)))
print("3! D(diag rows) =", 6 * mixed_discriminant([np.diag(r) for r in rows]), " permanent =", perm)

print("restrict(A, [0, 2]) =\n", restrict(A, [0, 2]))

P, lam = simultaneous_diagonalize(A, B)
print("A = P P^T residual", np.abs(P @ P.T - A).max(), "; B = P diag P^T residual", np.abs(P @ np.diag(lam) @ P.T - B).max())

rep = linear_image_check(rng.normal(size=(3, 3)), [A, B, C])
print("D(T M T^t) = det(T)^2 D(M):", rep.passed, f"({rep.lhs:.6g} vs {rep.rhs:.6g})")
