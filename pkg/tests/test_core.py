import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from favdist.core import (DuplicatePointError, FavDigraph, PointSet3, build_digraph, contains_krs,
                          count_between, optimal_radii)
from favdist.suspension import build_extremal

from .oracles import brute_arcs, brute_best_value, krs_by_targets

TRIANGLE = [[0, 0, 0], [1, 0, 0], [0.5, math.sqrt(3) / 2, 0]]
SQUARE = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]


def test_two_points():
    g = build_digraph(PointSet3([[0, 0, 0], [1, 0, 0]], [1, 2]))
    assert g.arcs == {(0, 1)}
    assert g.e == 1


def test_equilateral_triangle_is_complete():
    g = build_digraph(PointSet3(TRIANGLE, [1, 1, 1]))
    assert g.e == 6
    assert g.arcs == {(i, j) for i in range(3) for j in range(3) if i != j}


def test_extremal_13_matches_brute_force():
    ps = build_extremal(13)
    arcs = brute_arcs(ps.points.tolist(), ps.radii.tolist())
    assert len(arcs) == 76
    assert build_digraph(ps).arcs == arcs


def test_degree_sums():
    g = build_digraph(build_extremal(20))
    assert g.out_deg.sum() == g.in_deg.sum() == len(g.arcs) == g.e


def test_rejects_nonpositive_radius():
    with pytest.raises(ValueError, match="positive"):
        build_digraph(PointSet3(TRIANGLE, [1, 0, 1]))


def test_rejects_duplicates_naming_the_pair():
    with pytest.raises(DuplicatePointError, match="points 0 and 2"):
        build_digraph(PointSet3([[0, 0, 0], [1, 0, 0], [0, 0, 1e-12]], [1, 1, 1]))


def test_rejects_negative_tol():
    with pytest.raises(ValueError):
        build_digraph(PointSet3(TRIANGLE, [1, 1, 1]), tol=-1)


def test_mismatched_lengths():
    with pytest.raises(ValueError):
        PointSet3(TRIANGLE, [1, 1])


# -- count_between -----------------------------------------------------------

def test_count_between_extremal_13():
    ps = build_extremal(13)
    g = build_digraph(ps)
    dec = count_between(g, {"L": ps.meta["line_indices"], "C": ps.meta["circle_indices"]})
    ell, c = 5, 8
    # frozen from the brute-force oracle, equal to ell*c, ell-1, 4c
    labels = ["L"] * ell + ["C"] * c
    from .oracles import brute_block_counts

    ref = brute_block_counts(brute_arcs(ps.points.tolist(), ps.radii.tolist()), labels)
    assert dec["L", "C"] == ref["L", "C"] == 40
    assert dec["L", "L"] == ref["L", "L"] == 4
    assert dec.between("C", ["L", "C"]) == ref["C", "L"] + ref["C", "C"] == 32
    assert dec.total == g.e


def test_count_between_trivial_partition():
    g = build_digraph(build_extremal(14))
    dec = count_between(g, {"S": range(14)})
    assert dec.blocks == {("S", "S"): g.e}


@pytest.mark.parametrize("partition", [
    {"A": [0, 1], "B": [1, 2]},
    {"A": [0], "B": [1]},
    {"A": [0, 1, 2, 3]},
])
def test_count_between_rejects_bad_partitions(partition):
    g = build_digraph(PointSet3(TRIANGLE, [1, 1, 1]))
    with pytest.raises(ValueError):
        count_between(g, partition)


# -- optimal_radii -----------------------------------------------------------

def test_optimal_radii_triangle():
    radii, e = optimal_radii(TRIANGLE)
    assert e == 6
    np.testing.assert_allclose(radii, 1.0)


def test_optimal_radii_square():
    assert brute_best_value(SQUARE) == 8
    radii, e = optimal_radii(SQUARE)
    assert e == 8
    np.testing.assert_allclose(radii, 1.0)


def test_optimal_radii_prefers_smallest_on_ties():
    # every distance occurs once; the smallest wins
    pts = [[0, 0, 0], [1, 0, 0], [0, 2.5, 0]]
    radii, e = optimal_radii(pts)
    assert e == 3
    assert radii[0] == pytest.approx(1.0)


def test_optimal_radii_beats_construction_assignment():
    ps = build_extremal(20)
    _, e = optimal_radii(ps.points)
    assert e >= 151


def test_optimal_radii_value_is_realised():
    pts = np.array(list(itertools.product(range(3), repeat=3)), dtype=float)
    radii, e = optimal_radii(pts)
    assert build_digraph(PointSet3(pts, radii)).e == e


def test_optimal_radii_needs_two_points():
    with pytest.raises(ValueError):
        optimal_radii([[0, 0, 0]])


LATTICE = [tuple(p) for p in itertools.product(range(3), repeat=3)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(LATTICE), min_size=2, max_size=10, unique=True))
def test_optimal_radii_equals_exhaustive_candidates(pts):
    # lattice points give many repeated distances, the interesting case
    _, e = optimal_radii(pts)
    assert e == brute_best_value(pts)


# -- invariants --------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(LATTICE), min_size=3, max_size=9, unique=True), st.randoms())
def test_rebuild_is_idempotent_and_permutation_equivariant(pts, rnd):
    radii, _ = optimal_radii(pts)
    ps = PointSet3(pts, radii)
    g = build_digraph(ps)
    assert build_digraph(PointSet3(ps.points, ps.radii)).arcs == g.arcs
    perm = list(range(len(pts)))
    rnd.shuffle(perm)
    # new index k holds old point perm[k]
    h = build_digraph(ps.subset(perm).with_radii(ps.radii[perm]))
    inv = {old: new for new, old in enumerate(perm)}
    assert h.arcs == {(inv[i], inv[j]) for i, j in g.arcs}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(LATTICE), min_size=4, max_size=10, unique=True), st.data())
def test_decomposition_identity(pts, data):
    radii, _ = optimal_radii(pts)
    g = build_digraph(PointSet3(pts, radii))
    labels = data.draw(st.lists(st.sampled_from("abc"), min_size=len(pts), max_size=len(pts)))
    partition = {}
    for i, lab in enumerate(labels):
        partition.setdefault(lab, []).append(i)
    assert count_between(g, partition).total == g.e


# -- contains_krs ------------------------------------------------------------

def test_krs_complete_digraph():
    g = FavDigraph(~np.eye(4, dtype=bool))
    assert contains_krs(g, 2, 2)


def test_krs_directed_triangle():
    g = FavDigraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert not contains_krs(g, 2, 2)


def test_krs_extremal_13_only_through_line_to_circle():
    ps = build_extremal(13)
    g = build_digraph(ps)
    line, circle = ps.meta["line_indices"], ps.meta["circle_indices"]
    assert contains_krs(g, 3, 3)
    assert not contains_krs(g.without(line, circle), 3, 3)


def test_krs_size_guard():
    g = FavDigraph(np.zeros((200, 200), dtype=bool))
    with pytest.raises(ValueError, match="limit"):
        contains_krs(g, 3, 3)


def _digraphs(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(pairs)):
        yield [p for k, p in enumerate(pairs) if bits >> k & 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_krs_exhaustive_small(n):
    for arcs in _digraphs(n):
        g = FavDigraph.from_arcs(n, arcs)
        outs = [set(map(int, g.out_neighbours(i))) for i in range(n)]
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                assert contains_krs(g, r, s) == krs_by_targets(outs, r, s)


@settings(max_examples=300, deadline=None)
@given(st.integers(5, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
), st.integers(1, 3), st.integers(1, 3))
def test_krs_matches_bitmask_oracle(n_arcs, r, s):
    n, arcs = n_arcs
    g = FavDigraph.from_arcs(n, [(i, j) for i, j in arcs if i != j])
    outs = [set(map(int, g.out_neighbours(i))) for i in range(n)]
    assert contains_krs(g, r, s) == krs_by_targets(outs, r, s)
