"""Polytopes, Minkowski sums and volumes.

Bodies are stored by their vertices; hulls and volumes come from qhull.
Flat bodies keep their vertices but have volume 0 in the ambient space.
"""
from bezout.polytope import (
    box_inf,
    canonical_hull,
    cross_polytope,
    cube,
    minkowski_sum,
    project,
    scale,
    simplex,
    volume,
)

square = cube(2)
diamond = cross_polytope([0, 1], 2)
octagon = minkowski_sum(square, diamond)
print("square + diamond has", octagon.n_vertices, "vertices and area", round(volume(octagon), 12))

# interior points are discarded
P = canonical_hull([(0, 0), (2, 0), (0, 2), (0.5, 0.5)])
print("hull of four points:", P.vertices.tolist())

for n in range(1, 6):
    print(f"n={n}: |simplex| = {volume(simplex(n)):.6f}, |cross-polytope| = {volume(cross_polytope(range(n), n)):.6f}")

# a square sitting in a coordinate plane of R^3
flat = box_inf([1, 2], 3)
print("flat square: affine dim", flat.affine_dim, "volume", volume(flat),
      "projected area", volume(project(flat, [1, 2])))

print("|3 * cube(3)| =", volume(scale(cube(3), 3)))
