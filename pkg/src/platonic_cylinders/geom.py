"""Elementary 3D geometry of lines tangent to the unit sphere.

Vectors are plain ``numpy`` arrays of shape ``(3,)``; rotations are 3x3
orthogonal matrices. Everything here is pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
PARALLEL_TOL = 1e-12


class GeometryError(ValueError):
    """Raised on invalid geometric input (non-unit axis, out-of-range distance...)."""


def _as_vec(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise GeometryError(f"non-finite vector {a}")
    return a


@dataclass(frozen=True, eq=False)
class TangentLine:
    """A line touching the unit sphere.

    ``tangency`` is the touching point (unit vector) and ``direction`` a unit
    vector orthogonal to it.
    """

    tangency: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        p = _as_vec(self.tangency)
        u = _as_vec(self.direction)
        if abs(np.linalg.norm(p) - 1.0) > UNIT_TOL:
            raise GeometryError(f"tangency point not on the unit sphere: |p|={np.linalg.norm(p)!r}")
        if abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
            raise GeometryError(f"direction not unit: |u|={np.linalg.norm(u)!r}")
        if abs(p @ u) > UNIT_TOL:
            raise GeometryError(f"direction not orthogonal to tangency: p.u={p @ u!r}")
        p.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "tangency", p)
        object.__setattr__(self, "direction", u)

    @classmethod
    def from_points(cls, a, b) -> "TangentLine":
        """Line through ``a`` and ``b``, assumed tangent at the foot of the origin."""
        a, b = _as_vec(a), _as_vec(b)
        u = b - a
        u /= np.linalg.norm(u)
        p = a - (a @ u) * u
        p /= np.linalg.norm(p)
        u = u - (u @ p) * p
        return cls(p, u / np.linalg.norm(u))

    def transformed(self, rot: np.ndarray) -> "TangentLine":
        return TangentLine(rot @ self.tangency, rot @ self.direction)

    def point(self, t: float) -> np.ndarray:
        return self.tangency + t * self.direction

    def same_line(self, other: "TangentLine", tol: float = 1e-9) -> bool:
        """True if both describe the same point set (direction sign ignored)."""
        if np.linalg.norm(self.tangency - other.tangency) > tol:
            return False
        return np.linalg.norm(np.cross(self.direction, other.direction)) <= tol


def rotation_about_axis(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by ``angle`` about the unit ``axis`` (right-hand rule)."""
    k = _as_vec(axis)
    if abs(np.linalg.norm(k) - 1.0) > UNIT_TOL:
        raise GeometryError(f"rotation axis must be a unit vector, got |axis|={np.linalg.norm(k)!r}")
    K = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def line_distance(a: TangentLine, b: TangentLine) -> float:
    """Euclidean distance between two infinite lines."""
    w = b.tangency - a.tangency
    n = np.cross(a.direction, b.direction)
    nn = np.linalg.norm(n)
    if nn < PARALLEL_TOL:
        # parallel or identical: distance from b's point to line a
        return float(np.linalg.norm(w - (w @ a.direction) * a.direction))
    return float(abs(w @ n) / nn)


def closest_points(a: TangentLine, b: TangentLine) -> tuple[np.ndarray, np.ndarray]:
    """Feet of the common perpendicular of two non-parallel lines."""
    w = a.tangency - b.tangency
    c = a.direction @ b.direction
    denom = 1.0 - c * c
    if denom < PARALLEL_TOL**2:
        raise GeometryError("closest points are not unique for parallel lines")
    d = a.direction @ w
    e = b.direction @ w
    s = (c * e - d) / denom
    t = (e - c * d) / denom
    return a.point(s), b.point(t)


def radius_from_distance(d: float) -> float:
    """Touching radius of cylinders whose tangent rulings are ``d`` apart."""
    if d < 0 or d >= 2:
        raise GeometryError(f"distance must lie in [0, 2), got {d!r}")
    return d / (2.0 - d)


def distance_from_radius(r: float) -> float:
    if r < 0:
        raise GeometryError(f"radius must be non-negative, got {r!r}")
    return 2.0 * r / (1.0 + r)


def rotate_tangent_line(line: TangentLine, delta: float) -> TangentLine:
    """Turn ``line`` by ``delta`` about the diameter through its tangency point.

    Counterclockwise when viewed from outside the sphere along the outward normal.
    """
    p, u = line.tangency, line.direction
    # Rodrigues with u orthogonal to the axis p
    v = math.cos(delta) * u + math.sin(delta) * np.cross(p, u)
    return TangentLine(p, v / np.linalg.norm(v))
