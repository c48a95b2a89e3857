from itertools import combinations, product
from math import comb

import pytest

from gpaweb.coeffs import QQ
from gpaweb.gpa_eval import Evaluator
from gpaweb.graph_core import Path, ball, enumerate_paths, is_triangle
from gpaweb.relations import ss1_sides
from gpaweb.weight_lattice import (
    WeightLattice, complement, in_T, in_T1, in_T2, indicator, normalize, proper_subsets,
    ss1_labeling_counts, ss1_weighted_rhs, t1_size_test,
)


def _subsets(n):
    return [frozenset(c) for r in range(n + 1) for c in combinations(range(1, n + 1), r)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_degrees_are_binomial(n):
    g = WeightLattice(n)
    v = (0, 2, 1, 0, 3)[:n]
    v = normalize(v)
    assert g.degree_profile(v) == {m: comb(n, m) for m in range(1, n)}


@pytest.mark.parametrize("n", [3, 4])
def test_labels_are_type_differences(n):
    g = WeightLattice(n)
    for v in ball(g, g.base_vertex(), 2):
        for m in range(1, n):
            for w in g.neighbors(v, m):
                assert g.edge_label(v, w) == m
                assert (g.type_of(v) - g.type_of(w)) % n == m
                assert g.edge_label(w, v) == n - m


def test_vertices_are_normalized_mod_all_ones():
    g = WeightLattice(3)
    assert g.translate((0, 0, 0), {1, 2}) == (1, 1, 0)
    assert g.translate((1, 1, 0), {3}) == (0, 0, 0)
    assert g.edge_label((0, 0, 0), (0, 0, 0)) is None
    assert g.edge_label((0, 0, 0), (2, 0, 0)) is None


@pytest.mark.parametrize("n", [3, 4])
def test_triangles_match_triangle_presentation(n):
    g = WeightLattice(n)
    a = g.base_vertex()
    for A in proper_subsets(n):
        for B in proper_subsets(n):
            b = g.translate(a, A)
            c = g.translate(b, B)
            tri = is_triangle(g, a, b, c)
            # the closing step must be e_C with e_A + e_B + e_C in Z(1, ..., 1)
            expect = any(in_T(n, A, B, C) for C in proper_subsets(n))
            assert tri == expect


@pytest.mark.parametrize("n", [3, 4, 5])
def test_size_test_agrees_with_T1(n):
    for A, B, C in product(proper_subsets(n), repeat=3):
        if in_T(n, A, B, C):
            assert t1_size_test(n, A, B, C) == in_T1(n, A, B, C)
            assert not (in_T1(n, A, B, C) and in_T2(n, A, B, C))


def test_size_test_rejects_non_triangles():
    with pytest.raises(ValueError):
        t1_size_test(3, {1}, {1}, {2})


def test_T2_is_complement_image_of_T1():
    n = 4
    A, B, C = {1}, {2, 3}, {4}
    assert in_T1(n, A, B, C)
    assert in_T2(n, complement(n, C), complement(n, B), complement(n, A))


def test_split_vertices():
    g = WeightLattice(3)
    a = g.base_vertex()
    c = g.translate(a, {1, 2})
    mids = g.split_vertices(a, c, 1)
    assert sorted(mids) == sorted([g.translate(a, {1}), g.translate(a, {2})])
    assert len(g.split_vertices(a, a, 1)) == 3


def test_random_neighbor_is_a_neighbor():
    import random
    g = WeightLattice(4)
    rng = random.Random(0)
    v = g.base_vertex()
    for _ in range(100):
        m = rng.randint(1, 3)
        w = g.random_neighbor(v, m, rng)
        assert g.edge_label(v, w) == m
        v = w


def _path_for(g, subsets):
    verts = [g.base_vertex()]
    for S in subsets:
        verts.append(normalize(x + e for x, e in zip(verts[-1], indicator(g.n, S))))
    return verts


@pytest.mark.parametrize("n", [3, 4])
def test_subset_counts_match_web_evaluation(n):
    # labeling counts over subsets should be exactly what the evaluator returns
    g = WeightLattice(n)
    ev = Evaluator(g, QQ)
    subs = _subsets(n)
    checked = 0
    for m, l, j, k in product(range(1, n + 1), repeat=4):
        try:
            lhs, rhs = ss1_sides(n, m, l, j, k)
        except ValueError:
            continue
        for z, u, w, v in product(subs, repeat=4):
            if (len(z), len(u), len(w), len(v)) != (m, l, m - k + j, l + k - j):
                continue
            if [a + b for a, b in zip(indicator(n, z), indicator(n, u))] != \
                    [a + b for a, b in zip(indicator(n, w), indicator(n, v))]:
                continue
            p1 = Path(tuple(_path_for(g, [z, u])), (m, l))
            p2 = Path(tuple(_path_for(g, [w, v])), (m - k + j, l + k - j))
            L, R = ss1_labeling_counts(n, m, l, j, k, z, u, w, v)
            assert ev.eval_lincomb(lhs, p1, p2) == L
            assert ev.eval_lincomb(rhs, p1, p2) == ss1_weighted_rhs(m, l, j, k, R)
            checked += 1
    assert checked > 0


def test_paths_with_stay_steps():
    g = WeightLattice(3)
    paths = enumerate_paths(g, g.base_vertex(), (1, 3, 2))
    assert len(paths) == 9
    assert all(p.vertices[1] == p.vertices[2] for p in paths)
