"""Point sets with radius assignments and their favourite-distance digraphs.

A pair ``(S, r)`` is stored as a :class:`PointSet3`.  The digraph has an arc
``(i, j)`` whenever the distance from point ``i`` to point ``j`` equals the
radius chosen by ``i``, up to the relative tolerance ``tol * max(1, r_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

# contains_krs enumerates C(n, r) subsets; refuse anything bigger than this.
KRS_SUBSET_LIMIT = 200_000


class DuplicatePointError(ValueError):
    """Two distinct indices sit within tolerance of each other."""


@dataclass(frozen=True, eq=False)
class PointSet3:
    points: np.ndarray
    radii: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1, 3)
        rad = np.array(self.radii, dtype=float).reshape(-1)
        if len(pts) != len(rad):
            raise ValueError(f"{len(pts)} points but {len(rad)} radii")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(rad))):
            raise ValueError("coordinates and radii must be finite")
        pts.flags.writeable = False
        rad.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "radii", rad)
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def with_radii(self, radii) -> PointSet3:
        return PointSet3(self.points, radii, self.meta)

    def transformed(self, rotation: np.ndarray, translation=(0.0, 0.0, 0.0)) -> PointSet3:
        """Apply the rigid motion ``x -> R x + t``; radii are unchanged."""
        pts = self.points @ np.asarray(rotation, dtype=float).T + np.asarray(translation, dtype=float)
        return PointSet3(pts, self.radii, self.meta)

    def subset(self, indices: Sequence[int]) -> PointSet3:
        idx = np.asarray(list(indices), dtype=int)
        return PointSet3(self.points[idx], self.radii[idx], {})


def distance_matrix(points: np.ndarray) -> np.ndarray:
    """Pairwise Euclidean distances, accumulated coordinate by coordinate."""
    pts = np.asarray(points, dtype=float)
    d2 = np.zeros((len(pts), len(pts)))
    for k in range(pts.shape[1]):
        diff = pts[:, k, None] - pts[None, :, k]
        d2 += diff * diff
    return np.sqrt(d2)


def _check_distinct(dist: np.ndarray, tol: float) -> None:
    n = len(dist)
    close = dist <= tol
    close[np.diag_indices(n)] = False
    if close.any():
        i, j = map(int, np.argwhere(close)[0])
        raise DuplicatePointError(
            f"points {i} and {j} coincide within tol={tol:g} (distance {dist[i, j]:.3e})"
        )


class FavDigraph:
    """Favourite-distance digraph backed by a boolean adjacency matrix.

    ``adjacency[i, j]`` is true when ``(i, j)`` is an arc.  The explicit arc
    set is materialised lazily since large instances have ~n^2/4 arcs.
    """

    def __init__(self, adjacency: np.ndarray, tol: float = DEFAULT_TOL):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if np.any(np.diag(adj)):
            raise ValueError("favourite-distance digraphs have no loops")
        adj.flags.writeable = False
        self.adjacency = adj
        self.tol = tol
        self.out_deg = adj.sum(axis=1)
        self.in_deg = adj.sum(axis=0)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], tol: float = DEFAULT_TOL) -> FavDigraph:
        adj = np.zeros((n, n), dtype=bool)
        for i, j in arcs:
            adj[i, j] = True
        return cls(adj, tol)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def e(self) -> int:
        """Number of arcs, ``e_r(S)``."""
        return int(self.out_deg.sum())

    @cached_property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(i), int(j)) for i, j in np.argwhere(self.adjacency))

    def out_neighbours(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[i])

    def without(self, sources: Iterable[int], targets: Iterable[int]) -> FavDigraph:
        """Copy with every arc from ``sources`` into ``targets`` removed."""
        adj = self.adjacency.copy()
        adj[np.ix_(list(sources), list(targets))] = False
        return FavDigraph(adj, self.tol)

    def __repr__(self) -> str:
        return f"FavDigraph(n={self.n}, e={self.e}, tol={self.tol:g})"


def build_digraph(ps: PointSet3, tol: float = DEFAULT_TOL) -> FavDigraph:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    radii = ps.radii
    if np.any(radii <= 0):
        bad = int(np.flatnonzero(radii <= 0)[0])
        raise ValueError(f"radius of point {bad} is {radii[bad]!r}; radii must be positive")
    dist = distance_matrix(ps.points)
    _check_distinct(dist, tol)
    slack = tol * np.maximum(1.0, radii)
    adj = np.abs(dist - radii[:, None]) <= slack[:, None]
    adj[np.diag_indices(len(adj))] = False
    return FavDigraph(adj, tol)


@dataclass(frozen=True)
class ArcDecomposition:
    """Arc counts ``e_r(A, B)`` for every ordered pair of partition labels."""

    blocks: dict[tuple[str, str], int]

    @property
    def total(self) -> int:
        return sum(self.blocks.values())

    def __getitem__(self, key: tuple[str, str]) -> int:
        return self.blocks[key]

    def between(self, sources: str | Iterable[str], targets: str | Iterable[str]) -> int:
        """Sum of blocks over label groups, e.g. ``between("C", ["L", "C"])``."""
        src = [sources] if isinstance(sources, str) else list(sources)
        dst = [targets] if isinstance(targets, str) else list(targets)
        return sum(self.blocks[a, b] for a in src for b in dst)


def count_between(g: FavDigraph, partition: Mapping[str, Iterable[int]]) -> ArcDecomposition:
    groups = {label: np.asarray(sorted(set(map(int, idx))), dtype=int) for label, idx in partition.items()}
    seen = np.zeros(g.n, dtype=int)
    for idx in groups.values():
        if len(idx) and (idx.min() < 0 or idx.max() >= g.n):
            raise ValueError("partition refers to a vertex outside the digraph")
        seen[idx] += 1
    if np.any(seen > 1):
        raise ValueError(f"partition blocks overlap at vertex {int(np.flatnonzero(seen > 1)[0])}")
    if np.any(seen == 0):
        raise ValueError(f"partition misses vertex {int(np.flatnonzero(seen == 0)[0])}")
    blocks = {
        (a, b): int(g.adjacency[np.ix_(ia, ib)].sum())
        for a, ia in groups.items()
        for b, ib in groups.items()
    }
    return ArcDecomposition(blocks)


def optimal_radii(points, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """Mode oracle: the best radius assignment for a fixed point set.

    Each row of sorted distances is split into clusters wherever a gap
    exceeds ``tol * max(1, d)``; the radius is the smallest member of the
    largest cluster (smallest such cluster on ties).  Returns the radii and
    the resulting arc count, which is the maximum of ``e_r`` over all ``r``.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    n = len(pts)
    if n < 2:
        raise ValueError("need at least 2 points")
    dist = distance_matrix(pts)
    _check_distinct(dist, tol)
    rows = np.sort(dist[~np.eye(n, dtype=bool)].reshape(n, n - 1), axis=1)
    gaps = np.diff(rows, axis=1) > tol * np.maximum(1.0, rows[:, :-1])
    starts = np.concatenate([np.ones((n, 1), dtype=bool), gaps], axis=1)
    cluster = np.cumsum(starts, axis=1) - 1
    flat = (cluster + (n - 1) * np.arange(n)[:, None]).ravel()
    sizes = np.bincount(flat, minlength=n * (n - 1)).reshape(n, n - 1)
    # argmax returns the first maximal cluster, i.e. the smallest distance
    best = sizes.argmax(axis=1)
    counts = sizes[np.arange(n), best]
    first_member = np.argmax(cluster == best[:, None], axis=1)
    radii = rows[np.arange(n), first_member]
    return radii, int(counts.sum())


def contains_krs(g: FavDigraph, r: int, s: int) -> bool:
    """Does some r-set of vertices have at least s common out-neighbours?"""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    if r > g.n:
        return False
    if comb(g.n, r) > KRS_SUBSET_LIMIT:
        raise ValueError(f"C({g.n}, {r}) subsets exceeds the brute-force limit {KRS_SUBSET_LIMIT}")
    masks = [sum(1 << int(j) for j in g.out_neighbours(i)) for i in range(g.n)]
    candidates = [i for i in range(g.n) if masks[i].bit_count() >= s]
    for subset in combinations(candidates, r):
        common = masks[subset[0]]
        for i in subset[1:]:
            common &= masks[i]
            if common.bit_count() < s:
                break
        else:
            if common.bit_count() >= s:
                return True
    return False
