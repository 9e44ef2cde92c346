"""Successor/predecessor dynamics of favourite distances on the axis.

Axis points are normalised so the circle has radius 1 and centre 0; a point
``x`` then has radius ``sqrt(1 + x^2)``.  Its two favourite axis points are
``x +- sqrt(1 + x^2)`` and its unique possible in-neighbour is
``(y - 1/y) / 2``.  Encoding ``x`` by ``alpha = (pi/2 + atan x) / pi`` turns
the predecessor into the doubling map and the successors into right shifts
with a prepended binary digit, so dyadic angles give exact dynamics.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

import numpy as np

from .core import DEFAULT_TOL, FavDigraph, PointSet3, build_digraph

Sign = Literal["+", "-"]
ShiftOp = Literal["succ-", "succ+", "pred"]


@dataclass(frozen=True, order=True)
class DyadicAngle:
    """The angle fraction ``num / 2**exp`` in (0, 1), kept in lowest terms."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 1 or not 0 < self.num < (1 << self.exp):
            raise ValueError(f"{self.num}/2^{self.exp} is not in (0, 1)")
        if self.num % 2 == 0:
            raise ValueError(f"{self.num}/2^{self.exp} is not in lowest terms; use DyadicAngle.of")

    @classmethod
    def of(cls, value: Fraction | int | str) -> DyadicAngle:
        frac = Fraction(value)
        den = frac.denominator
        if den & (den - 1):
            raise ValueError(f"{frac} is not dyadic")
        return cls(frac.numerator, den.bit_length() - 1)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    @property
    def depth(self) -> int:
        """Depth in the successor tree of 0 (the root 1/2 has depth 0)."""
        return self.exp - 1

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __str__(self) -> str:
        return f"{self.num}/{1 << self.exp}"


HALF = DyadicAngle(1, 1)


def succ(x: float, sign: Sign) -> float:
    root = math.hypot(1.0, x)
    if sign == "+":
        return x + root if x >= 0 else 1.0 / (root - x)
    if sign == "-":
        return x - root if x <= 0 else -1.0 / (x + root)
    raise ValueError(f"sign must be '+' or '-', not {sign!r}")


def pred(y: float) -> float:
    if y == 0:
        raise ValueError("0 has no predecessor on the axis")
    return 0.5 * (y - 1.0 / y)


def alpha_of_point(x: float) -> float:
    return 0.5 + math.atan(x) / math.pi


def point_of_alpha(alpha) -> float:
    """Inverse of :func:`alpha_of_point`: ``x = -cot(alpha * pi)``.

    Accepts floats, fractions or :class:`DyadicAngle`.  For alpha above 1/2
    the complementary angle is used so that exact inputs stay accurate near 1.
    """
    if isinstance(alpha, DyadicAngle):
        alpha = alpha.fraction
    if not 0 < alpha < 1:
        raise ValueError(f"alpha={alpha} is outside (0, 1)")
    if alpha == Fraction(1, 2):
        return 0.0
    if alpha < Fraction(1, 2):
        return -1.0 / math.tan(float(alpha) * math.pi)
    return 1.0 / math.tan(float(1 - alpha) * math.pi)


def line_radius(x: float) -> float:
    """Distance from the axis point ``x`` to the unit circle."""
    return math.hypot(1.0, x)


def dy_shift(a: DyadicAngle, op: ShiftOp) -> DyadicAngle:
    if op == "succ-":
        return DyadicAngle(a.num, a.exp + 1)
    if op == "succ+":
        return DyadicAngle((1 << a.exp) + a.num, a.exp + 1)
    if op == "pred":
        if a.exp == 1:
            raise ValueError("alpha = 1/2 (the axis point 0) has no predecessor")
        return DyadicAngle(a.num % (1 << (a.exp - 1)), a.exp - 1)
    raise ValueError(f"unknown shift {op!r}")


def children(a: DyadicAngle) -> tuple[DyadicAngle, DyadicAngle]:
    return dy_shift(a, "succ-"), dy_shift(a, "succ+")


# 0, -1, 1, 1 - sqrt 2, sqrt 2 - 1
MANDATORY_TREE = (
    HALF,
    DyadicAngle(1, 2),
    DyadicAngle(3, 2),
    DyadicAngle(3, 3),
    DyadicAngle(5, 3),
)


def build_tree_line_set(ell: int) -> list[DyadicAngle]:
    """Subtree of the successor tree of 0 with ``ell`` vertices.

    Always contains the five angles of 0, +-1 and +-(sqrt 2 - 1); the rest is
    filled level by level, left to right, which keeps ``|x|`` small.
    """
    if ell < 5:
        raise ValueError(f"ell={ell} < 5")
    chosen = list(MANDATORY_TREE)
    have = set(chosen)
    exp = 2
    while len(chosen) < ell:
        exp += 1
        for num in range(1, 1 << exp, 2):
            if len(chosen) == ell:
                break
            a = DyadicAngle(num, exp)
            if a not in have and dy_shift(a, "pred") in have:
                chosen.append(a)
                have.add(a)
    return chosen


def random_subtree(size: int, rng: np.random.Generator, max_depth: int = 12) -> list[DyadicAngle]:
    """Random parent-closed subtree of the successor tree of 0."""
    if size < 1:
        raise ValueError("size must be positive")
    if size > (1 << (max_depth + 1)) - 1:
        raise ValueError(f"a tree of depth {max_depth} has fewer than {size} vertices")
    chosen = [HALF]
    have = {HALF}
    frontier = list(children(HALF)) if max_depth > 0 else []
    while len(chosen) < size:
        a = frontier.pop(int(rng.integers(len(frontier))))
        chosen.append(a)
        have.add(a)
        if a.depth < max_depth:
            frontier.extend(children(a))
    return chosen


def random_tree_subset(size: int, rng: np.random.Generator, max_depth: int = 12) -> list[DyadicAngle]:
    """Uniformly random set of vertices of the depth-limited successor tree."""
    total = (1 << (max_depth + 1)) - 1
    if not 1 <= size <= total:
        raise ValueError(f"size must be in [1, {total}]")
    picks = rng.choice(total, size=size, replace=False)
    out = []
    for idx in sorted(int(i) for i in picks):
        # heap numbering: node idx+1 has depth bit_length-1
        node = idx + 1
        depth = node.bit_length() - 1
        offset = node - (1 << depth)
        out.append(DyadicAngle(2 * offset + 1, depth + 1))
    return out


def doubling_orbit(alpha: Fraction) -> list[Fraction]:
    """Orbit of a rational under ``alpha -> 2 alpha mod 1`` until it repeats."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    orbit = []
    seen = set()
    while alpha not in seen:
        seen.add(alpha)
        orbit.append(alpha)
        alpha = (2 * alpha) % 1
        if alpha == 0:
            break
    return orbit


def embed_line(xs: Sequence[float]) -> PointSet3:
    """Axis points in the normalised frame with radii ``sqrt(1 + x^2)``."""
    xs = np.asarray(xs, dtype=float)
    pts = np.zeros((len(xs), 3))
    pts[:, 0] = xs
    return PointSet3(pts, np.hypot(1.0, xs))


@dataclass(frozen=True)
class LineComponent:
    vertices: tuple[int, ...]
    cycle: tuple[int, ...]
    roots: tuple[int, ...]
    tree_arcs: tuple[tuple[int, int], ...]

    @property
    def is_tree(self) -> bool:
        return not self.cycle


@dataclass(frozen=True)
class LineComponentStructure:
    components: tuple[LineComponent, ...]
    digraph: FavDigraph

    @property
    def cycles(self) -> list[tuple[int, ...]]:
        return [c.cycle for c in self.components if c.cycle]


def _as_axis_coords(items: Iterable) -> np.ndarray:
    xs = []
    for item in items:
        if isinstance(item, (DyadicAngle, Fraction)):
            xs.append(point_of_alpha(item))
        else:
            xs.append(float(item))
    return np.asarray(xs, dtype=float)


def analyze_line_digraph(items, radii=None, tol: float = DEFAULT_TOL) -> LineComponentStructure:
    """Split the axis digraph into components of cycles plus out-trees.

    ``items`` are angle fractions, axis coordinates, or an already embedded
    :class:`PointSet3` lying on the first coordinate axis.
    """
    if isinstance(items, PointSet3):
        if np.any(np.abs(items.points[:, 1:]) > tol * np.maximum(1.0, np.abs(items.points[:, :1]))):
            raise ValueError("points are not on the normalised axis")
        xs = items.points[:, 0].copy()
        radii = items.radii if radii is None else radii
    else:
        xs = _as_axis_coords(items)
    ps = embed_line(xs)
    if radii is not None:
        radii = np.asarray(radii, dtype=float)
        expected = ps.radii
        if radii.shape != expected.shape or np.any(np.abs(radii - expected) > tol * np.maximum(1.0, expected)):
            raise ValueError("radii are not sqrt(1 + x^2); not a normalised suspension axis")
    g = build_digraph(ps, tol)
    if g.out_deg.max(initial=0) > 2 or g.in_deg.max(initial=0) > 1:
        raise AssertionError("axis digraph violates the out-degree 2 / in-degree 1 caps")

    n = g.n
    parent = np.full(n, -1)
    for i, j in np.argwhere(g.adjacency):
        parent[j] = i
    # weak components via union-find on arcs
    comp = list(range(n))

    def find(v):
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    for i, j in np.argwhere(g.adjacency):
        comp[find(int(i))] = find(int(j))
    members: dict[int, list[int]] = {}
    for v in range(n):
        members.setdefault(find(v), []).append(v)

    components = []
    for verts in sorted(members.values()):
        # walk predecessors from any vertex; in-degree <= 1 gives a rho shape
        v = verts[0]
        order: dict[int, int] = {}
        while v != -1 and v not in order:
            order[v] = len(order)
            v = int(parent[v])
        if v == -1:
            cycle: tuple[int, ...] = ()
            roots = tuple(u for u in verts if parent[u] == -1)
        else:
            cyc = [v]
            u = int(parent[v])
            while u != v:
                cyc.append(u)
                u = int(parent[u])
            # cyc lists vertices against arc direction; reverse it
            cyc.reverse()
            k = cyc.index(min(cyc))
            cycle = tuple(cyc[k:] + cyc[:k])
            roots = cycle
        on_cycle = set(cycle)
        tree_arcs = tuple(
            (int(parent[u]), u) for u in verts if parent[u] != -1 and not (u in on_cycle)
        )
        components.append(LineComponent(tuple(verts), cycle, roots, tree_arcs))
    return LineComponentStructure(tuple(components), g)
