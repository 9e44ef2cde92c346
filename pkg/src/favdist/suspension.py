"""Suspensions: point sets on a circle and its symmetry axis.

The extremal square construction, the weaker hexagon variant, random
suspensions for stress tests, and a verifier of the four-block count
``e(L, C) + e(L) + e(C, L) + e(C)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .bounds import f3_bounds
from .core import DEFAULT_TOL, FavDigraph, PointSet3, build_digraph, count_between, optimal_radii
from .geometry import Frame, fit_circle
from .line import DyadicAngle, build_tree_line_set, line_radius, point_of_alpha, random_subtree

SQRT2 = math.sqrt(2.0)
# radius of a fix-up point: reaches two square vertices and +-(sqrt 2 - 1)
FIXUP_RADIUS = math.sqrt(4.0 - 2.0 * SQRT2)
# chord between the designated square vertices a and b
FIXUP_CHORD = math.sqrt(8.0 * (SQRT2 - 1.0))
# central angle subtended by a chord of length FIXUP_RADIUS
FIXUP_ANGLE = 2.0 * math.asin(FIXUP_RADIUS / 2.0)
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

_MIN_OFFSET_GAP = 1e-4
_MAX_REJITTER = 16


@dataclass(frozen=True, eq=False)
class SuspensionSpec:
    """Symbolic suspension in units of the circle radius.

    ``line_angles`` are angle fractions of axis points; ``circle_angles`` are
    polar angles on the circle with radii ``circle_radii`` (unit circle).
    """

    line_angles: Sequence[DyadicAngle | Fraction]
    circle_angles: Sequence[float]
    circle_radii: Sequence[float]
    frame: Frame = field(default_factory=Frame.normalized)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.circle_angles) != len(self.circle_radii):
            raise ValueError("circle_angles and circle_radii differ in length")
        phis = np.sort(np.mod(np.asarray(self.circle_angles, dtype=float), 2 * math.pi))
        if len(phis) > 1:
            gaps = np.diff(np.append(phis, phis[0] + 2 * math.pi))
            if gaps.min() <= 1e-9:
                raise ValueError("circle angles are not distinct modulo 2*pi")
        if any(r <= 0 for r in self.circle_radii):
            raise ValueError("circle radii must be positive")

    @property
    def ell(self) -> int:
        return len(self.line_angles)

    @property
    def c(self) -> int:
        return len(self.circle_angles)


def embed(spec: SuspensionSpec) -> PointSet3:
    """Coordinates and radii of a suspension; axis points come first."""
    fr = spec.frame
    xs = [point_of_alpha(a) for a in spec.line_angles]
    pts = [fr.axis_point(x) for x in xs] + [fr.circle_point(phi) for phi in spec.circle_angles]
    radii = [line_radius(x) * fr.radius for x in xs] + [r * fr.radius for r in spec.circle_radii]
    ell, c = spec.ell, spec.c
    meta = {
        "ell": ell,
        "c": c,
        "line_indices": list(range(ell)),
        "circle_indices": list(range(ell, ell + c)),
        **spec.meta,
    }
    return PointSet3(np.array(pts).reshape(-1, 3), radii, meta)


def _generic_offsets(count: int, period: float, pinned: Sequence[float], attempt: int) -> list[float]:
    """Golden-angle offsets modulo ``period`` kept away from the pinned ones."""
    taken = [p % period for p in pinned]
    out = []
    j = 1
    shift = 0.5 * attempt * _MIN_OFFSET_GAP * 37.0
    while len(out) < count:
        cand = (j * GOLDEN_ANGLE + shift) % period
        j += 1
        dists = [min(abs(cand - t), period - abs(cand - t)) for t in taken]
        if dists and min(dists) < _MIN_OFFSET_GAP:
            continue
        taken.append(cand)
        out.append(cand)
    return out


def extremal_split(n: int) -> tuple[int, int]:
    """Axis and circle sizes of the square construction."""
    return (n - 3) // 2, (n + 4) // 2


def hexagon_split(n: int) -> tuple[int, int]:
    ell = (n - 2) // 2
    return ell, n - ell


def extremal_spec(n: int, attempt: int = 0) -> SuspensionSpec:
    if n < 13:
        raise ValueError(f"the square construction needs n >= 13, got {n}")
    ell, c = extremal_split(n)
    squares, extra = divmod(c, 4)
    quarter = math.pi / 2
    offsets: list[float] = []
    angles: list[float] = []
    radii: list[float] = []
    if extra:
        # a and b sit at +-FIXUP_ANGLE, p's square at angle 0
        offsets = [FIXUP_ANGLE, -FIXUP_ANGLE]
        pinned = offsets + [0.0]
    else:
        pinned = []
    offsets += _generic_offsets(squares - len(offsets), quarter, pinned, attempt)
    for off in offsets:
        for j in range(4):
            angles.append(off + j * quarter)
            radii.append(SQRT2)
    for j in range(extra):
        angles.append(j * quarter)
        radii.append(FIXUP_RADIUS)
    return SuspensionSpec(
        build_tree_line_set(ell),
        angles,
        radii,
        meta={"variant": "square", "n": n, "expected": f3_bounds(n).lower},
    )


def hexagon_spec(n: int, attempt: int = 0) -> SuspensionSpec:
    if n < 13:
        raise ValueError(f"the hexagon variant needs n >= 13, got {n}")
    ell, c = hexagon_split(n)
    hexagons, extra = divmod(c, 6)
    sixth = math.pi / 3
    # leftover vertices sit at v_i + FIXUP_ANGLE next to hexagon 0
    pinned = [0.0, FIXUP_ANGLE, 2 * FIXUP_ANGLE] if extra else [0.0]
    offsets = [0.0] + _generic_offsets(hexagons - 1, sixth, pinned, attempt)
    angles: list[float] = []
    radii: list[float] = []
    for off in offsets:
        for j in range(6):
            angles.append(off + j * sixth)
            radii.append(1.0)
    for j in range(extra):
        angles.append(j * sixth + FIXUP_ANGLE)
        radii.append(FIXUP_RADIUS)
    return SuspensionSpec(
        build_tree_line_set(ell),
        angles,
        radii,
        meta={"variant": "hexagon", "n": n, "expected": (ell + 3) * (c + 1) - 4},
    )


def _build_checked(spec_fn, n: int, degree: int) -> PointSet3:
    for attempt in range(_MAX_REJITTER):
        ps = embed(spec_fn(n, attempt))
        g = build_digraph(ps)
        circle = ps.meta["circle_indices"]
        line = ps.meta["line_indices"]
        if np.all(g.out_deg[circle] == degree) and g.adjacency[np.ix_(line, line)].sum() == len(line) - 1:
            return ps
    raise RuntimeError(f"could not place circle points generically for n={n}")


def build_extremal(n: int) -> PointSet3:
    """Square construction with ``ceil(n^2/4 + 5n/2) + 1`` arcs."""
    return _build_checked(extremal_spec, n, 4)


def build_hexagon_variant(n: int) -> PointSet3:
    """Hexagon construction; every circle vertex has out-degree 3."""
    return _build_checked(hexagon_spec, n, 3)


def random_suspension(n: int, rng: np.random.Generator, max_depth: int = 12) -> PointSet3:
    """Random subtree on the axis plus random points of a square angular grid.

    Radii are the mode-optimal ones, so axis points (with at least three
    circle points around) favour their distance to the circle.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    ell = int(rng.integers(1, n - 2))
    c = n - ell
    quarter_min = -(-c // 4)
    grid = 4 * int(rng.integers(quarter_min, 2 * quarter_min + 4))
    picks = np.sort(rng.choice(grid, size=c, replace=False))
    angles = 2 * math.pi * picks / grid
    spec = SuspensionSpec(random_subtree(ell, rng, max_depth), angles, np.ones(c), meta={"grid": grid})
    ps = embed(spec)
    radii, _ = optimal_radii(ps.points)
    return ps.with_radii(radii)


@dataclass(frozen=True)
class CountReport:
    n: int
    ell: int
    c: int
    e_LC: int
    e_L: int
    e_CL: int
    e_C: int
    e_total: int
    formula_value: int
    matches: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class NotASuspensionError(ValueError):
    pass


def _partition_indices(partition) -> tuple[list[int], list[int]]:
    if isinstance(partition, Mapping):
        return list(partition["L"]), list(partition["C"])
    line, circle = partition
    return list(line), list(circle)


def check_suspension(ps: PointSet3, line: Sequence[int], circle: Sequence[int], tol: float = DEFAULT_TOL) -> Frame:
    """Fit the circle through ``circle`` and check the suspension conditions.

    Raises :class:`NotASuspensionError` when a circle point is off the
    circle, an axis point is off the axis, or an axis radius differs from the
    distance to the circle.
    """
    if len(circle) < 3:
        raise NotASuspensionError("a suspension needs at least 3 circle points to fix its circle")
    try:
        fr = fit_circle(ps.points[circle])
    except ValueError as exc:
        raise NotASuspensionError(str(exc)) from exc
    pts_c = ps.points[circle]
    if np.any(fr.distance_to_circle(pts_c) > tol * max(1.0, fr.radius)):
        raise NotASuspensionError("circle points are not concyclic within tolerance")
    if len(line):
        pts_l = ps.points[line]
        h, rho = fr.decompose(pts_l)
        if np.any(rho > tol * np.maximum(fr.radius, np.abs(h)).clip(min=1.0)):
            raise NotASuspensionError("axis points are off the symmetry axis")
        want = fr.axis_radius(pts_l)
        have = ps.radii[line]
        if np.any(np.abs(have - want) > tol * np.maximum(1.0, have)):
            bad = int(np.asarray(line)[np.argmax(np.abs(have - want))])
            raise NotASuspensionError(f"radius of axis point {bad} differs from its distance to the circle")
    return fr


def verify_suspension_counts(ps: PointSet3, partition=None, tol: float = DEFAULT_TOL,
                             g: FavDigraph | None = None) -> CountReport:
    if partition is None:
        from .detect import detect_suspension

        det = detect_suspension(ps)
        if det.t:
            raise NotASuspensionError(f"{det.t} points lie off the detected circle and axis")
        partition = (det.L_indices, det.C_indices)
    line, circle = _partition_indices(partition)
    check_suspension(ps, line, circle, tol)
    if g is None:
        g = build_digraph(ps, tol)
    dec = count_between(g, {"L": line, "C": circle})
    ell, c = len(line), len(circle)
    e_lc, e_l, e_cl, e_c = dec["L", "C"], dec["L", "L"], dec["C", "L"], dec["C", "C"]
    cap = f3_bounds(ps.n).suspension_cap
    matches = e_lc == ell * c and e_l <= ell and e_cl <= 2 * c and e_c <= 2 * c and dec.total <= cap
    return CountReport(ps.n, ell, c, e_lc, e_l, e_cl, e_c, dec.total, cap, bool(matches))
