"""Circles in 3-space and their symmetry axes."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def orthogonal_unit(axis) -> np.ndarray:
    """A deterministic unit vector perpendicular to ``axis``."""
    axis = _unit(axis)
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    return _unit(helper - axis * (helper @ axis))


@dataclass(frozen=True, eq=False)
class Frame:
    """Circle of radius ``radius`` centred at ``center`` in the plane normal to ``axis``.

    ``reference`` fixes where circle angle 0 sits.
    """

    center: np.ndarray
    axis: np.ndarray
    radius: float = 1.0
    reference: np.ndarray | None = None

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float).reshape(3)
        axis = np.asarray(self.axis, dtype=float).reshape(3)
        if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
            raise ValueError("axis must be a unit vector")
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")
        ref = orthogonal_unit(axis) if self.reference is None else np.asarray(self.reference, dtype=float)
        if abs(np.linalg.norm(ref) - 1.0) > 1e-9 or abs(ref @ axis) > 1e-9:
            raise ValueError("reference must be a unit vector orthogonal to the axis")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "reference", ref)

    @classmethod
    def normalized(cls) -> Frame:
        """Unit circle in the y-z plane, axis along x, angle 0 at (0, 1, 0)."""
        return cls(np.zeros(3), np.array([1.0, 0.0, 0.0]), 1.0, np.array([0.0, 1.0, 0.0]))

    @property
    def binormal(self) -> np.ndarray:
        return np.cross(self.axis, self.reference)

    def axis_point(self, h: float) -> np.ndarray:
        return self.center + h * self.radius * self.axis

    def circle_point(self, phi: float) -> np.ndarray:
        return self.center + self.radius * (np.cos(phi) * self.reference + np.sin(phi) * self.binormal)

    def decompose(self, points) -> tuple[np.ndarray, np.ndarray]:
        """Signed height along the axis and distance from the axis."""
        rel = np.asarray(points, dtype=float).reshape(-1, 3) - self.center
        h = rel @ self.axis
        radial = rel - np.outer(h, self.axis)
        return h, np.linalg.norm(radial, axis=1)

    def distance_to_axis(self, points) -> np.ndarray:
        return self.decompose(points)[1]

    def distance_to_circle(self, points) -> np.ndarray:
        h, rho = self.decompose(points)
        return np.hypot(h, rho - self.radius)

    def axis_radius(self, points) -> np.ndarray:
        """Distance from (the axis projection of) each point to the circle."""
        h, _ = self.decompose(points)
        return np.hypot(h, self.radius)

    def as_dict(self) -> dict:
        return {
            "center": self.center.tolist(),
            "axis": self.axis.tolist(),
            "circle_radius": self.radius,
        }


def circumcircle(a, b, c, eps: float = 1e-12) -> Frame | None:
    """Circle through three points, or ``None`` if they are (nearly) collinear."""
    a, b, c = (np.asarray(p, dtype=float) for p in (a, b, c))
    u, v = b - a, c - a
    w = np.cross(u, v)
    ww = w @ w
    scale = max(u @ u, v @ v)
    if scale == 0 or ww <= eps * scale * scale:
        return None
    offset = ((u @ u) * np.cross(v, w) + (v @ v) * np.cross(w, u)) / (2.0 * ww)
    return Frame(a + offset, _canonical_axis(w / np.sqrt(ww)), float(np.linalg.norm(offset)))


def fit_circle(points) -> Frame:
    """Least-squares circle through at least three coplanar points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) < 3:
        raise ValueError("need at least 3 points to fit a circle")
    mean = pts.mean(axis=0)
    _, sing, vt = np.linalg.svd(pts - mean)
    if sing[1] <= 1e-12 * max(sing[0], 1.0):
        raise ValueError("points are collinear")
    e1, e2, normal = vt
    x = (pts - mean) @ e1
    y = (pts - mean) @ e2
    design = np.column_stack([2 * x, 2 * y, np.ones_like(x)])
    (cx, cy, k), *_ = np.linalg.lstsq(design, x * x + y * y, rcond=None)
    radius = np.sqrt(k + cx * cx + cy * cy)
    return Frame(mean + cx * e1 + cy * e2, _canonical_axis(normal), float(radius))


def _canonical_axis(axis: np.ndarray) -> np.ndarray:
    # first nonzero component positive
    axis = _unit(axis)
    k = int(np.argmax(np.abs(axis) > 1e-12))
    return -axis if axis[k] < 0 else axis


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
