"""Convex polytopes in vertex representation.

A :class:`Polytope` stores the extreme points of a finite point set in R^n,
sorted lexicographically so that equal bodies compare equal. Hulls and
volumes are delegated to qhull through :mod:`scipy.spatial`; lower
dimensional bodies are handled by working in their affine hull and carry
n-dimensional volume 0.

Coordinate indices are 0-based everywhere in this package.
"""
from __future__ import annotations

import json
import math
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

__all__ = [
    "Polytope",
    "canonical_hull",
    "volume",
    "minkowski_sum",
    "minkowski_sum_all",
    "project",
    "scale",
    "translate",
    "standard_body",
    "simplex",
    "cube",
    "segment",
    "segment_sum",
    "cross_polytope",
    "box_inf",
    "point",
    "polytope_to_json",
    "polytope_from_json",
]

# relative tolerance for affine rank and hull membership
RTOL = 1e-9
# coordinate tolerance used for duplicate removal and ordering
COORD_TOL = 1e-12


class Polytope:
    """Convex hull of finitely many points, stored by its vertices.

    Build instances with :func:`canonical_hull` (or the constructors below);
    calling ``Polytope(vertices)`` directly assumes the rows are already the
    canonical vertex list.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices: np.ndarray):
        v = np.array(vertices, dtype=float)
        v.setflags(write=False)
        self.vertices = v

    @property
    def dim(self) -> int:
        """Ambient dimension."""
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def affine_dim(self) -> int:
        return _affine_rank(self.vertices)

    @cached_property
    def volume(self) -> float:
        return _full_volume(self.vertices, self.affine_dim)

    @cached_property
    def _key(self) -> bytes:
        return self.vertices.tobytes() + self.vertices.shape[1].to_bytes(4, "little")

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self._key == other._key

    def isclose(self, other: "Polytope", atol: float = 1e-9) -> bool:
        return (
            self.vertices.shape == other.vertices.shape
            and bool(np.allclose(self.vertices, other.vertices, rtol=0, atol=atol))
        )

    def __add__(self, other: "Polytope") -> "Polytope":
        return minkowski_sum(self, other)

    def __rmul__(self, t: float) -> "Polytope":
        return scale(self, t)

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, n_vertices={self.n_vertices}, affine_dim={self.affine_dim})"


def _affine_rank(points: np.ndarray) -> int:
    if len(points) <= 1:
        return 0
    centered = points - points.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    scale_ = max(float(s[0]), 1.0) if s.size else 1.0
    return int(np.sum(s > RTOL * scale_))


def _affine_frame(points: np.ndarray, rank: int) -> tuple[np.ndarray, np.ndarray]:
    """Origin and orthonormal basis (rows) of the affine hull."""
    origin = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - origin, full_matrices=False)
    return origin, vt[:rank]


def _full_volume(vertices: np.ndarray, rank: int) -> float:
    n = vertices.shape[1]
    if rank < n:
        return 0.0
    if n == 1:
        return float(vertices.max() - vertices.min())
    return float(ConvexHull(vertices).volume)


def _lexsort_rows(points: np.ndarray) -> np.ndarray:
    keys = np.round(points / COORD_TOL) * COORD_TOL if points.size else points
    order = np.lexsort(keys.T[::-1])
    return points[order]


def _dedupe(points: np.ndarray) -> np.ndarray:
    pts = _lexsort_rows(points)
    if len(pts) <= 1:
        return pts
    scale_ = max(1.0, float(np.abs(pts).max()))
    gaps = np.max(np.abs(np.diff(pts, axis=0)), axis=1)
    keep = np.concatenate([[True], gaps > COORD_TOL * scale_])
    return pts[keep]


def _extreme_indices(points: np.ndarray, rank: int) -> tuple[np.ndarray, float | None]:
    """Indices of the extreme points, plus the full-dimensional volume when known."""
    if rank == 0:
        return np.array([0]), None
    n = points.shape[1]
    if rank < n or n == 1:
        origin, basis = _affine_frame(points, rank)
        coords = (points - origin) @ basis.T
    else:
        coords = points
    if rank == 1:
        c = coords[:, 0]
        return np.unique([int(np.argmin(c)), int(np.argmax(c))]), None
    try:
        hull = ConvexHull(coords)
    except QhullError:
        # nearly flat input: fall back to joggled hull
        hull = ConvexHull(coords, qhull_options="QJ")
    return np.sort(hull.vertices), (float(hull.volume) if rank == n else None)


def canonical_hull(points: Iterable[Sequence[float]] | np.ndarray) -> Polytope:
    """Return the polytope whose vertices are the extreme points of ``points``.

    >>> canonical_hull([(0, 0), (1, 0), (0, 1), (0.25, 0.25)]).vertices.tolist()
    [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]
    """
    pts = _as_points(points)
    if pts.size == 0:
        raise ValueError("canonical_hull needs at least one point")
    if pts.ndim != 2:
        raise ValueError("points must all have the same dimension")
    if pts.shape[1] < 1:
        raise ValueError("dimension must be at least 1")
    if not np.all(np.isfinite(pts)):
        raise ValueError("all coordinates must be finite")
    pts = _dedupe(pts)
    rank = _affine_rank(pts)
    idx, vol = _extreme_indices(pts, rank)
    out = Polytope(_lexsort_rows(pts[idx]))
    out.__dict__["affine_dim"] = rank
    if vol is not None:
        out.__dict__["volume"] = vol
    return out


def _as_points(points) -> np.ndarray:
    # ragged input is reported as a dimension mismatch
    try:
        return np.asarray(points, dtype=float)
    except ValueError as exc:
        raise ValueError("points must all have the same dimension") from exc


def volume(P: Polytope) -> float:
    """Lebesgue measure of ``P`` in its ambient dimension (0 if flat)."""
    return P.volume


@lru_cache(maxsize=8192)
def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} != {Q.dim}")
    if Q.n_vertices == 1:
        return translate(P, Q.vertices[0])
    if P.n_vertices == 1:
        return translate(Q, P.vertices[0])
    sums = (P.vertices[:, None, :] + Q.vertices[None, :, :]).reshape(-1, P.dim)
    return canonical_hull(sums)


def minkowski_sum_all(bodies: Sequence[Polytope]) -> Polytope:
    """Minkowski sum of a nonempty sequence of polytopes."""
    if not bodies:
        raise ValueError("need at least one body")
    out = bodies[0]
    for b in bodies[1:]:
        out = minkowski_sum(out, b)
    return out


def scale(P: Polytope, t: float) -> Polytope:
    if t < 0:
        raise ValueError("scale factor must be nonnegative")
    if t == 0:
        return Polytope(np.zeros((1, P.dim)))
    out = Polytope(P.vertices * t)
    if "volume" in P.__dict__:
        out.__dict__["volume"] = P.volume * t**P.dim
    return out


def translate(P: Polytope, v: Sequence[float]) -> Polytope:
    v = np.asarray(v, dtype=float)
    if v.shape != (P.dim,):
        raise ValueError("translation vector has wrong dimension")
    # translation preserves lexicographic order
    return Polytope(P.vertices + v)


def _check_indices(indices: Iterable[int], n: int, allow_empty: bool = False) -> tuple[int, ...]:
    idx = tuple(sorted(set(int(k) for k in indices)))
    if not idx and not allow_empty:
        raise ValueError("index set must be nonempty")
    if any(k < 0 or k >= n for k in idx):
        raise ValueError(f"indices {idx} out of range for dimension {n}")
    return idx


def project(P: Polytope, indices: Iterable[int]) -> Polytope:
    """Orthogonal projection onto the coordinate subspace spanned by ``indices``.

    The result lives in dimension ``len(indices)`` with coordinates kept in
    increasing index order.
    """
    idx = _check_indices(indices, P.dim)
    return canonical_hull(P.vertices[:, idx])


# ---------------------------------------------------------------------------
# standard bodies


def point(n: int, coords: Sequence[float] | None = None) -> Polytope:
    c = np.zeros(n) if coords is None else np.asarray(coords, dtype=float)
    return Polytope(c.reshape(1, n))


def simplex(n: int) -> Polytope:
    """conv{0, e_1, ..., e_n}."""
    return canonical_hull(np.vstack([np.zeros(n), np.eye(n)]))


def cube(n: int) -> Polytope:
    """Unit cube [0, 1]^n."""
    return segment_sum(range(n), n)


def segment(k: int, n: int) -> Polytope:
    """[0, e_k] in R^n."""
    return segment_sum([k], n)


def segment_sum(indices: Iterable[int], n: int) -> Polytope:
    """Sum of the unit segments [0, e_k] over ``indices``; {0} for an empty set."""
    idx = _check_indices(indices, n, allow_empty=True)
    verts = np.zeros((2 ** len(idx), n))
    for row, bits in enumerate(np.ndindex(*(2,) * len(idx))):
        verts[row, list(idx)] = bits
    return canonical_hull(verts)


def cross_polytope(indices: Iterable[int], n: int) -> Polytope:
    """conv{±e_k : k in indices}; {0} for an empty set."""
    idx = _check_indices(indices, n, allow_empty=True)
    if not idx:
        return point(n)
    eye = np.eye(n)[list(idx)]
    return canonical_hull(np.vstack([eye, -eye]))


def box_inf(indices: Iterable[int], n: int) -> Polytope:
    """Sum of [-e_k, e_k] over ``indices``; {0} for an empty set."""
    idx = _check_indices(indices, n, allow_empty=True)
    verts = np.zeros((2 ** len(idx), n))
    for row, bits in enumerate(np.ndindex(*(2,) * len(idx))):
        verts[row, list(idx)] = 2 * np.array(bits) - 1
    return canonical_hull(verts)


_STANDARD = {
    "simplex": lambda n, **_: simplex(n),
    "cube": lambda n, **_: cube(n),
    "segment": lambda n, k, **_: segment(k, n),
    "segment_sum": lambda n, indices, **_: segment_sum(indices, n),
    "cross_polytope": lambda n, indices, **_: cross_polytope(indices, n),
    "box_inf": lambda n, indices, **_: box_inf(indices, n),
}


def standard_body(kind: str, n: int, **params) -> Polytope:
    """Named constructor, e.g. ``standard_body("cross_polytope", 3, indices=[0, 2])``."""
    try:
        build = _STANDARD[kind]
    except KeyError:
        raise ValueError(f"unknown body kind {kind!r}; expected one of {sorted(_STANDARD)}") from None
    if kind in ("segment_sum", "cross_polytope", "box_inf") and not list(params.get("indices", [])):
        raise ValueError(f"{kind} needs a nonempty index set")
    return build(n, **params)


# ---------------------------------------------------------------------------
# file format


def polytope_to_json(P: Polytope) -> str:
    return json.dumps({"dim": P.dim, "vertices": P.vertices.tolist()})


def polytope_from_json(text: str) -> Polytope:
    doc = json.loads(text)
    dim = int(doc["dim"])
    verts = _as_points(doc["vertices"])
    if verts.ndim != 2 or verts.shape[1] != dim:
        raise ValueError(f"vertices must be length-{dim} arrays")
    return canonical_hull(verts)


def _closed_form_volume(kind: str, n: int) -> float:
    # used by tests and demos
    return {
        "simplex": 1 / math.factorial(n),
        "cube": 1.0,
        "cross_polytope": 2.0**n / math.factorial(n),
        "box_inf": 2.0**n,
    }[kind]
