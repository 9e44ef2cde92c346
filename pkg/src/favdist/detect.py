"""RANSAC recovery of the circle/axis structure and the stability experiment."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PointSet3, optimal_radii
from .geometry import Frame, circumcircle
from .suspension import build_extremal

DETECT_TOL = 1e-6


class DegenerateSampleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DetectionResult:
    frame: Frame
    C_indices: tuple[int, ...]
    L_indices: tuple[int, ...]
    T_indices: tuple[int, ...]
    residuals: np.ndarray
    tol: float

    @property
    def t(self) -> int:
        return len(self.T_indices)

    def as_dict(self) -> dict:
        return {
            "frame": self.frame.as_dict(),
            "C": list(self.C_indices),
            "L": list(self.L_indices),
            "T": list(self.T_indices),
            "t": self.t,
            "max_member_residual": float(
                self.residuals[list(self.C_indices) + list(self.L_indices)].max(initial=0.0)
            ),
        }


def classify(ps: PointSet3, frame: Frame, tol: float = DETECT_TOL):
    """Circle members, axis members (radius condition included) and residuals."""
    h, rho = frame.decompose(ps.points)
    to_circle = np.hypot(h, rho - frame.radius)
    to_axis = rho
    scale = np.maximum(1.0, np.maximum(np.abs(h), frame.radius))
    on_circle = to_circle <= tol * scale
    want = np.hypot(h, frame.radius)
    on_axis = (to_axis <= tol * scale) & (np.abs(ps.radii - want) <= tol * np.maximum(1.0, ps.radii))
    residuals = np.minimum(to_circle, to_axis)
    return on_circle, on_axis & ~on_circle, residuals


def detect_suspension(ps: PointSet3, tol: float = DETECT_TOL, ransac_iters: int = 200,
                      seed: int = 0) -> DetectionResult:
    """Find the circle and axis carrying the most points.

    Each iteration fits the circle through three sampled points; a point
    counts if it lies on that circle, or on its axis with radius equal to its
    distance to the circle.  The best frame (earliest on ties) wins and the
    remaining points form the exceptional set ``T``.
    """
    n = ps.n
    if n < 8:
        raise ValueError(f"detection needs at least 8 points, got {n}")
    rng = np.random.default_rng(seed)
    best = None
    best_score = -1
    for _ in range(ransac_iters):
        i, j, k = rng.choice(n, size=3, replace=False)
        frame = circumcircle(ps.points[i], ps.points[j], ps.points[k])
        if frame is None:
            continue
        on_circle, on_axis, _ = classify(ps, frame, tol)
        score = int(on_circle.sum() + on_axis.sum())
        if score > best_score:
            best, best_score = frame, score
            if score == n:
                break
    if best is None:
        raise DegenerateSampleError(f"all {ransac_iters} samples were collinear")
    on_circle, on_axis, residuals = classify(ps, best, tol)
    idx = np.arange(n)
    rest = ~(on_circle | on_axis)
    return DetectionResult(
        best,
        tuple(map(int, idx[on_circle])),
        tuple(map(int, idx[on_axis])),
        tuple(map(int, idx[rest])),
        residuals,
        tol,
    )


@dataclass(frozen=True)
class StabilityReport:
    n: int
    damaged: int
    e_value: int
    e_ratio: float
    c_frac: float
    l_frac: float
    t: int
    t_frac: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def stability_experiment(n: int, damage_fraction: float, seed: int, displacement: float = 0.5,
                         tol: float = DETECT_TOL) -> StabilityReport:
    """Damage the square construction and measure how much structure survives.

    ``floor(damage_fraction * n)`` points are displaced by a Gaussian of
    scale ``displacement`` (in circle radii); the count is recomputed with the
    mode oracle and the suspension is re-detected.
    """
    if n < 50:
        raise ValueError("the experiment is meant for n >= 50")
    if not 0 <= damage_fraction <= 0.2:
        raise ValueError("damage_fraction must lie in [0, 0.2]")
    rng = np.random.default_rng(seed)
    base = build_extremal(n)
    k = int(damage_fraction * n)
    pts = base.points.copy()
    hit = rng.choice(n, size=k, replace=False)
    pts[hit] += displacement * rng.standard_normal((k, 3))
    radii, e_value = optimal_radii(pts)
    damaged = PointSet3(pts, radii)
    det = detect_suspension(damaged, tol=tol, seed=int(rng.integers(2**63)))
    return StabilityReport(
        n=n,
        damaged=k,
        e_value=e_value,
        e_ratio=e_value / n**2,
        c_frac=len(det.C_indices) / n,
        l_frac=len(det.L_indices) / n,
        t=det.t,
        t_frac=det.t / n,
    )
