"""Convex body models with exact support, membership, chord and volume computations.

Supported kinds: balls, axis-aligned ellipsoids, boxes, simplices, V-polytopes
(vertex lists) and regular polygons in the plane. Bodies are immutable,
full-dimensional (non-empty interior) and validated at construction; degenerate
inputs are rejected. Thin limiting shapes are handled as families of
full-dimensional bodies, never as flat sets.

All operations are pure, so body values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import pi, gamma

import numpy as np

UNIT_TOL = 1e-12      # |u| - 1 tolerance for direction arguments
MEMBER_TOL = 1e-10    # membership slack: boundary points count as inside

__all__ = [
    "ConvexBody",
    "Ball",
    "Ellipsoid",
    "Box",
    "Simplex",
    "VPolytope",
    "RegularPolygon",
    "support",
    "width",
    "contains",
    "volume",
    "chord_length",
    "diameter",
    "unit_ball_volume",
    "orthonormal_complement",
]


def unit_ball_volume(d: int) -> float:
    """Volume kappa_d of the unit ball in R^d."""
    return pi ** (d / 2) / gamma(d / 2 + 1)


def orthonormal_complement(u: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to the unit vector u.

    Returns a (d, d-1) matrix whose columns span u-perp. Built from a
    Householder reflection, hence deterministic in u.
    """
    u = np.asarray(u, dtype=float)
    d = u.size
    if d == 1:
        return np.zeros((1, 0))
    sign = 1.0 if u[0] >= 0 else -1.0
    v = u.copy()
    v[0] += sign
    H = np.eye(d) - 2.0 * np.outer(v, v) / (v @ v)
    return H[:, 1:]


def _as_direction(u, d: int) -> np.ndarray:
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.size != d:
        raise ValueError(f"direction has dimension {u.size}, body has dimension {d}")
    nrm = float(np.linalg.norm(u))
    if abs(nrm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must be a unit vector (|u| = {nrm!r})")
    return u


def _as_point(x, d: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != d:
        raise ValueError(f"point has dimension {x.size}, body has dimension {d}")
    return x


class _Slab:
    """Running 1-D intersection of half-lines {s : c0 + s*c1 <= 0}.

    Accumulates linear constraints along a line parameter s, vectorized over
    many lines at once; constraints with c1 == 0 only decide feasibility
    (within MEMBER_TOL).
    """

    def __init__(self, n: int):
        self.lo = np.full(n, -np.inf)
        self.hi = np.full(n, np.inf)
        self.feasible = np.ones(n, dtype=bool)

    def add(self, c0: np.ndarray, c1: np.ndarray) -> None:
        pos = c1 > 0.0
        neg = c1 < 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = -c0 / c1
        self.hi = np.where(pos, np.minimum(self.hi, bound), self.hi)
        self.lo = np.where(neg, np.maximum(self.lo, bound), self.lo)
        self.feasible &= pos | neg | (c0 <= MEMBER_TOL)

    def lengths(self) -> np.ndarray:
        return np.where(self.feasible, np.maximum(self.hi - self.lo, 0.0), 0.0)


class ConvexBody:
    """Common interface of all body kinds.

    Subclasses implement exact support functions, membership predicates,
    chord lengths (length of the intersection with a line) and volumes.
    """

    @property
    def dim(self) -> int:
        raise NotImplementedError

    # -- support / width ----------------------------------------------------

    def support(self, u) -> float:
        """sup over the body of <x, u> for a unit direction u."""
        u = _as_direction(u, self.dim)
        return float(self._support_many(u[None, :])[0])

    def support_many(self, U: np.ndarray) -> np.ndarray:
        """Vectorized support over rows of U (assumed unit vectors)."""
        U = np.asarray(U, dtype=float)
        return self._support_many(U)

    def _support_many(self, U: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def width(self, u) -> float:
        """Projection length |P_u K| = support(u) + support(-u)."""
        u = _as_direction(u, self.dim)
        s = self._support_many(np.vstack([u, -u]))
        return float(s[0] + s[1])

    def width_many(self, U: np.ndarray) -> np.ndarray:
        U = np.asarray(U, dtype=float)
        return self._support_many(U) + self._support_many(-U)

    # -- membership ----------------------------------------------------------

    def contains(self, x) -> bool:
        x = _as_point(x, self.dim)
        return bool(self._contains_many(x[None, :])[0])

    def contains_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return self._contains_many(X)

    def _contains_many(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # -- chords ---------------------------------------------------------------

    def chord_length(self, x, u) -> float:
        """Length of the intersection of the body with the line x + R*u.

        Zero when the line misses the body. Only the line matters, so x may be
        any point on it (typically an offset in u-perp).
        """
        u = _as_direction(u, self.dim)
        x = _as_point(x, self.dim)
        return float(self._chord_pairs(x[None, :], u[None, :])[0])

    def chord_lengths(self, X: np.ndarray, u) -> np.ndarray:
        """Vectorized chord lengths for many line offsets X (rows), one direction u."""
        u = _as_direction(u, self.dim)
        X = np.asarray(X, dtype=float)
        return self._chord_pairs(X, np.broadcast_to(u, X.shape))

    def chord_lengths_pairs(self, X: np.ndarray, U: np.ndarray) -> np.ndarray:
        """Chord lengths for paired rows of offsets X and unit directions U."""
        X = np.asarray(X, dtype=float)
        U = np.asarray(U, dtype=float)
        return self._chord_pairs(X, U)

    def _chord_pairs(self, X: np.ndarray, U: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # -- scalars ---------------------------------------------------------------

    def volume(self) -> float:
        raise NotImplementedError

    def diameter(self) -> float:
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned (lower, upper) bounds, used by rejection samplers."""
        raise NotImplementedError


def _max_pairwise_distance(V: np.ndarray) -> float:
    diff = V[:, None, :] - V[None, :, :]
    return float(np.sqrt((diff * diff).sum(-1)).max())


class _PolytopeMixin:
    """Shared vertex-based implementations; subclasses provide .vertices."""

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def _support_many(self, U: np.ndarray) -> np.ndarray:
        return (U @ self.vertices.T).max(axis=1)

    def diameter(self) -> float:
        return _max_pairwise_distance(self.vertices)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)


@dataclass(frozen=True, eq=False)
class Ball(ConvexBody):
    """Euclidean ball with given center and radius > 0."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).reshape(-1)
        if c.size < 1:
            raise ValueError("center: must have dimension >= 1")
        if not np.isfinite(c).all():
            raise ValueError("center: coordinates must be finite")
        r = float(self.radius)
        if not (r > 0.0 and np.isfinite(r)):
            raise ValueError(f"radius: must be strictly positive, got {self.radius!r}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return self.center.size

    def _support_many(self, U):
        return U @ self.center + self.radius

    def _contains_many(self, X):
        diff = X - self.center
        return (diff * diff).sum(-1) <= (self.radius + MEMBER_TOL) ** 2

    def _chord_pairs(self, X, U):
        y = X - self.center
        beta = (y * U).sum(-1)
        disc = beta * beta - ((y * y).sum(-1) - self.radius**2)
        return 2.0 * np.sqrt(np.maximum(disc, 0.0))

    def volume(self) -> float:
        return unit_ball_volume(self.dim) * self.radius**self.dim

    def diameter(self) -> float:
        return 2.0 * self.radius

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius


@dataclass(frozen=True, eq=False)
class Ellipsoid(ConvexBody):
    """Axis-aligned ellipsoid: sum_i ((x_i - c_i)/a_i)^2 <= 1 with a_i > 0.

    General orientations are obtained upstream by rotating input data; keeping
    the axes aligned keeps support and chord formulas closed-form.
    """

    center: np.ndarray
    semi_axes: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float).reshape(-1)
        a = np.asarray(self.semi_axes, dtype=float).reshape(-1)
        if c.size != a.size:
            raise ValueError("semi_axes: must match the dimension of center")
        if c.size < 1:
            raise ValueError("center: must have dimension >= 1")
        if not (np.isfinite(a).all() and (a > 0.0).all()):
            raise ValueError("semi_axes: all must be strictly positive and finite")
        if not np.isfinite(c).all():
            raise ValueError("center: coordinates must be finite")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "semi_axes", a)

    @property
    def dim(self) -> int:
        return self.center.size

    def _support_many(self, U):
        return U @ self.center + np.sqrt((U * U) @ (self.semi_axes**2))

    def _contains_many(self, X):
        y = (X - self.center) / self.semi_axes
        return (y * y).sum(-1) <= 1.0 + MEMBER_TOL

    def _chord_pairs(self, X, U):
        y = (X - self.center) / self.semi_axes
        v = U / self.semi_axes
        alpha = (v * v).sum(-1)
        beta = (y * v).sum(-1)
        disc = beta * beta - alpha * ((y * y).sum(-1) - 1.0)
        return 2.0 * np.sqrt(np.maximum(disc, 0.0)) / alpha

    def volume(self) -> float:
        return unit_ball_volume(self.dim) * float(np.prod(self.semi_axes))

    def diameter(self) -> float:
        return 2.0 * float(self.semi_axes.max())

    def bounding_box(self):
        return self.center - self.semi_axes, self.center + self.semi_axes


@dataclass(frozen=True, eq=False)
class Box(ConvexBody):
    """Axis-aligned box with lower < upper componentwise."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.asarray(self.upper, dtype=float).reshape(-1)
        if lo.size != hi.size or lo.size < 1:
            raise ValueError("lower/upper: must have equal dimension >= 1")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("lower/upper: bounds must be finite")
        if not (lo < hi).all():
            raise ValueError("upper: box is degenerate, lower < upper must hold componentwise")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return self.lower.size

    @cached_property
    def vertices(self) -> np.ndarray:
        d = self.dim
        corners = np.array(np.meshgrid(*[[0, 1]] * d, indexing="ij"), dtype=float)
        mask = corners.reshape(d, -1).T
        return self.lower + mask * (self.upper - self.lower)

    def _support_many(self, U):
        return np.where(U > 0, U * self.upper, U * self.lower).sum(-1)

    def _contains_many(self, X):
        return ((X >= self.lower - MEMBER_TOL) & (X <= self.upper + MEMBER_TOL)).all(-1)

    def _chord_pairs(self, X, U):
        slab = _Slab(X.shape[0])
        for i in range(self.dim):
            slab.add(self.lower[i] - X[:, i], -U[:, i])
            slab.add(X[:, i] - self.upper[i], U[:, i])
        return slab.lengths()

    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))

    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def bounding_box(self):
        return self.lower, self.upper


@dataclass(frozen=True, eq=False)
class Simplex(_PolytopeMixin, ConvexBody):
    """Simplex given by d+1 affinely independent vertices in R^d."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] + 1:
            raise ValueError("vertices: a simplex in R^d needs exactly d+1 vertices")
        if not np.isfinite(V).all():
            raise ValueError("vertices: coordinates must be finite")
        d = V.shape[1]
        M = (V[1:] - V[0]).T
        det = float(np.linalg.det(M))
        # reject only true degeneracy: thin-by-design simplices (the extremal
        # family at small delta) must construct fine
        scale = max(1.0, float(np.abs(M).max()))
        if abs(det) <= 2.5e-14 * scale**d:
            raise ValueError("vertices: degenerate simplex, vertices are affinely dependent")
        object.__setattr__(self, "vertices", V)

    @cached_property
    def _edge_matrix_inv(self) -> np.ndarray:
        return np.linalg.inv((self.vertices[1:] - self.vertices[0]).T)

    def _barycentric(self, X: np.ndarray) -> np.ndarray:
        # coordinates w.r.t. vertices 1..d; the weight of vertex 0 is 1 - sum
        return (X - self.vertices[0]) @ self._edge_matrix_inv.T

    def _contains_many(self, X):
        lam = self._barycentric(X)
        return (lam >= -MEMBER_TOL).all(-1) & (lam.sum(-1) <= 1.0 + MEMBER_TOL)

    def _chord_pairs(self, X, U):
        lam0 = self._barycentric(X)                        # (n, d)
        mu = U @ self._edge_matrix_inv.T                   # (n, d)
        slab = _Slab(X.shape[0])
        for k in range(self.dim):
            slab.add(-lam0[:, k], -mu[:, k])
        slab.add(lam0.sum(-1) - 1.0, mu.sum(-1))
        return slab.lengths()

    def volume(self) -> float:
        M = (self.vertices[1:] - self.vertices[0]).T
        d = self.dim
        return abs(float(np.linalg.det(M))) / gamma(d + 1)


@dataclass(frozen=True, eq=False)
class VPolytope(_PolytopeMixin, ConvexBody):
    """Convex hull of a vertex list with full-dimensional affine hull.

    Membership and chords use an internal Delaunay triangulation into
    simplices, so no facet enumeration is exposed.
    """

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.ndim != 2:
            raise ValueError("vertices: expected a (n, d) array of points")
        n, d = V.shape
        if d < 1 or n < d + 1:
            raise ValueError("vertices: a polytope in R^d needs at least d+1 vertices")
        if not np.isfinite(V).all():
            raise ValueError("vertices: coordinates must be finite")
        object.__setattr__(self, "vertices", V)
        if self._triangulation is None or len(self._triangulation) == 0:
            raise ValueError("vertices: affine hull is not full-dimensional")

    @cached_property
    def _triangulation(self) -> list[Simplex] | None:
        from scipy.spatial import Delaunay, QhullError

        try:
            dela = Delaunay(self.vertices)
        except QhullError:
            return None
        object.__setattr__(self, "_delaunay", dela)
        cells = []
        for idx in dela.simplices:
            pts = self.vertices[idx]
            try:
                cells.append(Simplex(pts))
            except ValueError:
                continue  # sliver cell with zero volume
        return cells

    @cached_property
    def _delaunay(self):
        self._triangulation  # populates the attribute
        return self.__dict__["_delaunay"]

    def _contains_many(self, X):
        X = np.atleast_2d(X)
        return self._delaunay.find_simplex(X, tol=MEMBER_TOL) >= 0

    def _chord_pairs(self, X, U):
        total = np.zeros(X.shape[0])
        for cell in self._triangulation:
            total += cell._chord_pairs(X, U)
        return total

    def volume(self) -> float:
        return sum(cell.volume() for cell in self._triangulation)


@dataclass(frozen=True, eq=False)
class RegularPolygon(_PolytopeMixin, ConvexBody):
    """Regular n-gon in the plane, circumradius R, vertex 0 at angle 0."""

    n_sides: int
    circumradius: float

    def __post_init__(self):
        n = int(self.n_sides)
        if n < 3:
            raise ValueError(f"n_sides: need at least 3 sides, got {self.n_sides!r}")
        r = float(self.circumradius)
        if not (r > 0.0 and np.isfinite(r)):
            raise ValueError(f"circumradius: must be strictly positive, got {self.circumradius!r}")
        object.__setattr__(self, "n_sides", n)
        object.__setattr__(self, "circumradius", r)

    @property
    def dim(self) -> int:
        return 2

    @cached_property
    def vertices(self) -> np.ndarray:
        ang = 2.0 * pi * np.arange(self.n_sides) / self.n_sides
        return self.circumradius * np.stack([np.cos(ang), np.sin(ang)], axis=1)

    @cached_property
    def _facet_normals(self) -> np.ndarray:
        ang = pi * (2.0 * np.arange(self.n_sides) + 1.0) / self.n_sides
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)

    @property
    def apothem(self) -> float:
        return self.circumradius * float(np.cos(pi / self.n_sides))

    def _contains_many(self, X):
        return (X @ self._facet_normals.T <= self.apothem + MEMBER_TOL).all(-1)

    def _chord_pairs(self, X, U):
        slab = _Slab(X.shape[0])
        for nk in self._facet_normals:
            slab.add(X @ nk - self.apothem, U @ nk)
        return slab.lengths()

    def volume(self) -> float:
        n = self.n_sides
        return 0.5 * n * self.circumradius**2 * float(np.sin(2.0 * pi / n))


# -- module-level operation aliases ------------------------------------------


def support(body: ConvexBody, u) -> float:
    return body.support(u)


def width(body: ConvexBody, u) -> float:
    return body.width(u)


def contains(body: ConvexBody, x) -> bool:
    return body.contains(x)


def volume(body: ConvexBody) -> float:
    return body.volume()


def chord_length(body: ConvexBody, x, u) -> float:
    return body.chord_length(x, u)


def diameter(body: ConvexBody) -> float:
    return body.diameter()
