"""Simulated annealing over point sets, scored by the mode oracle."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import DuplicatePointError, PointSet3, distance_matrix, optimal_radii
from .suspension import build_extremal

Init = Literal["random", "suspension", "perturbed-suspension"]


@dataclass(frozen=True)
class SearchConfig:
    n: int
    iterations: int = 2000
    restarts: int = 1
    seed: int = 0
    init: Init = "random"
    step_scale: float = 0.1
    t0: float = 1.0
    decay: float = 0.999
    # probability of a move that lands a point on a favourite sphere
    snap_prob: float = 0.5

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("search needs n >= 3")
        if self.iterations < 1 or self.restarts < 1:
            raise ValueError("iterations and restarts must be at least 1")
        if self.step_scale <= 0:
            raise ValueError("step_scale must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")
        if self.t0 <= 0:
            raise ValueError("t0 must be positive")
        if not 0 <= self.snap_prob <= 1:
            raise ValueError("snap_prob must lie in [0, 1]")
        if self.init not in ("random", "suspension", "perturbed-suspension"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass(frozen=True, eq=False)
class SearchResult:
    points: PointSet3
    e_value: int
    restart: int
    history: tuple[int, ...]


def _score(pts: np.ndarray) -> tuple[np.ndarray, int]:
    try:
        return optimal_radii(pts)
    except DuplicatePointError:
        return np.ones(len(pts)), -1


def _initial(cfg: SearchConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.init == "random":
        return rng.uniform(-1.0, 1.0, size=(cfg.n, 3))
    pts = build_extremal(cfg.n).points.copy()
    if cfg.init == "perturbed-suspension":
        pts += 1e-3 * rng.standard_normal(pts.shape)
    return pts


def _sphere_point(rng, center, radius):
    v = rng.standard_normal(3)
    return center + radius * v / np.linalg.norm(v)


def _two_sphere_point(rng, c1, r1, c2, r2):
    """Random point on the intersection circle of two spheres, if any."""
    axis = c2 - c1
    d = np.linalg.norm(axis)
    if d == 0 or d > r1 + r2 or d < abs(r1 - r2):
        return None
    axis = axis / d
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    rho = math.sqrt(max(r1 * r1 - a * a, 0.0))
    u = np.cross(axis, rng.standard_normal(3))
    u /= np.linalg.norm(u)
    return c1 + a * axis + rho * u


def _propose(pts, radii, temp, sigma, cfg, rng):
    n = len(pts)
    i = int(rng.integers(n))
    new = pts.copy()
    if rng.random() < cfg.snap_prob:
        others = [j for j in range(n) if j != i]
        j, k = rng.choice(others, size=2, replace=False)
        spot = _two_sphere_point(rng, pts[j], radii[j], pts[k], radii[k])
        new[i] = spot if spot is not None else _sphere_point(rng, pts[j], radii[j])
    else:
        new[i] = pts[i] + sigma * temp * rng.standard_normal(3)
    return new


def _anneal(cfg: SearchConfig, restart: int, seed_seq: np.random.SeedSequence) -> SearchResult:
    rng = np.random.default_rng(seed_seq)
    pts = _initial(cfg, rng)
    radii, score = _score(pts)
    best_pts, best_score = pts.copy(), score
    sigma = cfg.step_scale * float(distance_matrix(pts).max())
    temp = cfg.t0
    history = [score]
    for _ in range(cfg.iterations):
        cand = _propose(pts, radii, temp, sigma, cfg, rng)
        cand_radii, cand_score = _score(cand)
        delta = cand_score - score
        if cand_score >= 0 and (delta >= 0 or rng.random() < math.exp(delta / temp)):
            pts, radii, score = cand, cand_radii, cand_score
            if score > best_score:
                best_pts, best_score = pts.copy(), score
        history.append(score)
        temp *= cfg.decay
    best_radii, _ = optimal_radii(best_pts)
    return SearchResult(PointSet3(best_pts, best_radii, {"restart": restart}), best_score, restart, tuple(history))


def local_search(cfg: SearchConfig, workers: int = 1) -> SearchResult:
    """Best configuration over all restarts (lowest restart index on ties).

    Restart ``k`` draws from the ``k``-th child of ``SeedSequence(seed)``, so
    the answer does not depend on ``workers``.
    """
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(_anneal, [cfg] * cfg.restarts, range(cfg.restarts), seeds))
    else:
        results = [_anneal(cfg, k, s) for k, s in enumerate(seeds)]
    return max(results, key=lambda r: (r.e_value, -r.restart))
