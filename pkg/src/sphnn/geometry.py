"""Geodesic discs on the surface of an n-dimensional sphere.

A "circle" here is the open set of surface points whose great-circle
distance to a surface center is below a radius.  Its complement (minus the
boundary) is again such a disc, centered at the antipode.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-6
_SURFACE_TOL = 1e-9


class GeometryError(ValueError):
    """Structural misuse: mismatched dimensions, off-surface points, bad radii."""


@dataclass(frozen=True)
class Sphere:
    ambient_dim: int
    radius: float = 1.0

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise GeometryError(f"ambient_dim must be >= 2, got {self.ambient_dim}")
        if not self.radius > 0:
            raise GeometryError(f"radius must be positive, got {self.radius}")

    @property
    def half_circumference(self) -> float:
        return math.pi * self.radius

    def point(self, coords) -> "SpherePoint":
        """Project arbitrary nonzero coordinates onto the surface."""
        v = np.asarray(coords, dtype=float)
        if v.shape != (self.ambient_dim,):
            raise GeometryError(f"expected shape ({self.ambient_dim},), got {v.shape}")
        norm = np.linalg.norm(v)
        if norm == 0:
            raise GeometryError("cannot project the origin onto the sphere")
        return SpherePoint(v * (self.radius / norm), self.radius)

    def random_point(self, rng: np.random.Generator) -> "SpherePoint":
        return self.point(rng.standard_normal(self.ambient_dim))


@dataclass(frozen=True, eq=False)
class SpherePoint:
    coords: np.ndarray
    sphere_radius: float = 1.0

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)
        if c.ndim != 1 or c.size < 2:
            raise GeometryError("a sphere point needs a 1-d coordinate vector of length >= 2")
        if abs(np.linalg.norm(c) - self.sphere_radius) > _SURFACE_TOL * max(1.0, self.sphere_radius):
            raise GeometryError(f"point is not on the surface (|p| = {np.linalg.norm(c)!r})")

    @property
    def dim(self) -> int:
        return self.coords.size

    def antipode(self) -> "SpherePoint":
        return SpherePoint(-self.coords, self.sphere_radius)

    def __neg__(self):
        return self.antipode()

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            return NotImplemented
        return self.sphere_radius == other.sphere_radius and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.sphere_radius, self.coords.tobytes()))


def _check_pair(a: SpherePoint, b: SpherePoint) -> None:
    if a.dim != b.dim:
        raise GeometryError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.sphere_radius != b.sphere_radius:
        raise GeometryError("points lie on spheres of different radius")


def unit_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between two unit vectors.

    Uses 2 atan2(|u - v|, |u + v|): exact at 0 and pi, where arccos of the
    dot product loses half its digits, and symmetric in u and v bit for bit.
    """
    return 2.0 * math.atan2(float(np.linalg.norm(u - v)), float(np.linalg.norm(u + v)))


def geodesic_distance(a: SpherePoint, b: SpherePoint) -> float:
    _check_pair(a, b)
    R = a.sphere_radius
    return unit_angle(a.coords / R, b.coords / R) * R


@dataclass(frozen=True)
class SurfaceCircle:
    center: SpherePoint
    radius: float

    def __post_init__(self):
        limit = math.pi * self.center.sphere_radius
        if not 0 < self.radius < limit:
            raise GeometryError(f"circle radius must lie in (0, {limit}), got {self.radius!r}")

    @property
    def dim(self) -> int:
        return self.center.dim


def complement(c: SurfaceCircle) -> SurfaceCircle:
    """Antipodal disc with radius pi*R - r; the set complement up to the boundary."""
    return SurfaceCircle(c.center.antipode(), math.pi * c.center.sphere_radius - c.radius)


def membership(q: SpherePoint, c: SurfaceCircle) -> bool:
    return geodesic_distance(q, c.center) < c.radius


class QualRelation(enum.Enum):
    P = "P"
    PBAR = "Pbar"
    PO = "PO"
    D = "D"
    EQ = "EQ"

    def converse(self) -> "QualRelation":
        return {QualRelation.P: QualRelation.PBAR, QualRelation.PBAR: QualRelation.P}.get(self, self)


def classify(d: float, ra: float, rb: float, tol: float = DEFAULT_TOL) -> QualRelation:
    """Relation between two discs given center distance and radii."""
    if abs(d) <= tol and abs(ra - rb) <= tol:
        return QualRelation.EQ
    if d + ra <= rb + tol:
        return QualRelation.P
    if d + rb <= ra + tol:
        return QualRelation.PBAR
    if d >= ra + rb - tol:
        return QualRelation.D
    return QualRelation.PO


def relation_of(a: SurfaceCircle, b: SurfaceCircle, tol: float = DEFAULT_TOL) -> QualRelation:
    if tol < 0:
        raise GeometryError("tol must be nonnegative")
    return classify(geodesic_distance(a.center, b.center), a.radius, b.radius, tol)
