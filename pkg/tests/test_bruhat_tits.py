import random
from fractions import Fraction
from itertools import product

import pytest

from gpaweb.bruhat_tits import (
    BruhatTitsBuilding, LatticeClass, hermite_mod, remove_homothety, smith_valuations, vq,
)
from gpaweb.coeffs import gaussian_binomial
from gpaweb.gpa_eval import random_walk
from gpaweb.graph_core import PrecisionError, ball, is_triangle
from gpaweb.weight_lattice import WeightLattice


def _diag_class(g, exps):
    """Class of the diagonal lattice with entries q^exps[i]."""
    lo = min(exps)
    gens = [[g.q ** (exps[i] - lo) if i == j else 0 for j in range(g.n)] for i in range(g.n)]
    return g.canonical(gens, max(exps) - lo + 1)


def _sample_vertices(g, count, seed, radius=3):
    rng = random.Random(seed)
    return [random_walk(g, g.base_vertex(), rng.randint(0, radius), rng) for _ in range(count)]


def test_valuation():
    assert vq(12, 2) == 2
    assert vq(Fraction(9, 4), 3) == 2
    assert vq(Fraction(1, 9), 3) == -2
    assert vq(0, 5) is None


def test_smith_valuations_of_diagonal_matrix():
    assert smith_valuations([[9, 0], [0, 3]], 3) == [1, 2]
    assert smith_valuations([[1, 1], [0, 3]], 3) == [0, 1]


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_degrees_are_subspace_counts(n, q):
    g = BruhatTitsBuilding(n, q)
    for v in [g.base_vertex()] + _sample_vertices(g, 5, seed=n * q, radius=2):
        assert g.degree_profile(v) == {m: gaussian_binomial(n, m, q) for m in range(1, n)}
        assert len(set(g.all_neighbors(v))) == sum(g.degree_profile(v).values())


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_labels_antisymmetric_and_typed(n, q):
    g = BruhatTitsBuilding(n, q)
    for v in _sample_vertices(g, 6, seed=7, radius=2):
        for m in range(1, n):
            for w in g.neighbors(v, m):
                assert g.edge_label(v, w) == m
                assert g.edge_label(w, v) == n - m
                assert (g.type_of(v) - g.type_of(w)) % n == m


def test_smith_adjacency_matches_link_enumeration():
    # adjacency computed by elementary divisors against adjacency by residue subspaces
    g = BruhatTitsBuilding(3, 2)
    v = g.base_vertex()
    near = set(g.all_neighbors(v))
    for w in ball(g, v, 2):
        assert (g.edge_label(v, w) is not None) == (w in near)


def test_residue_subspace_round_trip():
    g = BruhatTitsBuilding(3, 3)
    for v in _sample_vertices(g, 4, seed=3, radius=2):
        for m in (1, 2):
            for S in g._subspaces[m]:
                w = g.preimage(v, S)
                g._residue.clear()
                assert g.residue_subspace(v, w) == S


def test_link_is_the_projective_geometry():
    g = BruhatTitsBuilding(3, 2)
    v = g.base_vertex()
    nbrs = g.all_neighbors(v)
    for x, y in product(nbrs, repeat=2):
        cycle = is_triangle(g, v, x, y) or is_triangle(g, v, y, x)
        assert g.link_incidence(v, x, y) == cycle


def test_standard_apartment_is_a_weight_lattice():
    # diagonal lattices diag(q^{-v}) reproduce the order-1 graph
    for n, q in [(3, 2), (4, 3)]:
        g = BruhatTitsBuilding(n, q)
        wl = WeightLattice(n)
        verts = ball(wl, wl.base_vertex(), 2)
        image = {v: _diag_class(g, [-x for x in v]) for v in verts}
        assert len(set(image.values())) == len(verts)
        for v in verts:
            for w in verts:
                assert wl.edge_label(v, w) == g.edge_label(image[v], image[w])


def test_canonical_form_ignores_generating_set():
    g = BruhatTitsBuilding(3, 3)
    rng = random.Random(5)
    q = g.q
    for _ in range(50):
        gens = [[rng.randrange(27) for _ in range(3)] for _ in range(3)]
        gens.append([27, 0, 0]); gens.append([0, 27, 0]); gens.append([0, 0, 27])
        base = g.canonical(gens, 4)
        # unit multiples, integer combinations and an overall power of q
        u = [[x * 2 % 81 for x in r] for r in gens]
        mixed = u + [[a + b for a, b in zip(gens[0], gens[1])]]
        assert g.canonical(mixed, 4) == base
        assert g.canonical([[q * x for x in r] for r in gens], 5) == base


def test_hermite_form_shape():
    rows = hermite_mod([[2, 4, 1], [0, 8, 6]], 3, 2, 4)
    for i in range(3):
        assert rows[i][i] > 0 and rows[i][i] & (rows[i][i] - 1) == 0
        for j in range(i):
            assert rows[i][j] == 0
        for j in range(i + 1, 3):
            assert 0 <= rows[i][j] < rows[j][j]


def test_remove_homothety():
    rows = ((3, 0), (0, 9))
    assert remove_homothety(rows, 3) == ((1, 0), (0, 3))
    keep = ((3, 1), (0, 3))
    assert remove_homothety(keep, 3) == keep


def test_json_round_trip():
    g = BruhatTitsBuilding(3, 3)
    for v in _sample_vertices(g, 10, seed=11):
        assert LatticeClass.from_json(v.to_json()) == v


def test_precision_error_reports_requirement():
    g = BruhatTitsBuilding(3, 2, precision=2)
    v = g.base_vertex()
    with pytest.raises(PrecisionError) as info:
        for _ in range(4):
            v = g.neighbors(v, 1)[0]
    assert info.value.required > 2


def test_q_must_be_prime():
    with pytest.raises(ValueError):
        BruhatTitsBuilding(3, 4)


def test_split_vertices_complete_triangles():
    g = BruhatTitsBuilding(3, 3)
    a = g.base_vertex()
    for c in g.neighbors(a, 2):
        mids = g.split_vertices(a, c, 1)
        assert len(mids) == gaussian_binomial(2, 1, 3)
        for b in mids:
            assert g.edge_label(a, b) == 1 and g.edge_label(b, c) == 1
