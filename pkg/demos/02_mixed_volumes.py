"""Mixed volumes by inclusion-exclusion, checked against interpolation.

The interpolation route samples t -> |t_1 K_1 + ... + t_m K_m| on an integer
lattice and reads the coefficient off a linear solve. Both agree to round-off.
"""
import math

import numpy as np

from bezout.inequalities import random_polytope
from bezout.mixed_volume import expansion_identity_check, mixed_volume, mixed_volume_interp
from bezout.polytope import cross_polytope, cube, segment

print("V(square, diamond) =", round(mixed_volume([cube(2), cross_polytope([0, 1], 2)]), 12))

for n in range(2, 6):
    v = mixed_volume([segment(k, n) for k in range(n)])
    print(f"unit segments in R^{n}: V = {v:.3e}, 1/n! = {1 / math.factorial(n):.3e}")

rng = np.random.default_rng(3)
K = [random_polytope(3, rng) for _ in range(3)]
a, b = mixed_volume(K), mixed_volume_interp(K)
print(f"random triple in R^3: inclusion-exclusion {a:.12f}, interpolation {b:.12f}")

# repeated arguments: V(K_1[2], K_2)
print("V(K1[2], K2) =", mixed_volume(K[:2], [2, 1]))

rep = expansion_identity_check(K[0], K[1:])
print("expansion identities:", "hold" if rep.passed else "FAIL",
      f"(relative residuals {rep.extra['sum_rel_residual']:.1e}, {rep.extra['product_rel_residual']:.1e})")
