import pytest

from gpaweb.coeffs import QQ
from gpaweb.gpa_eval import Evaluator, exhaustive_starts, verify_relation
from gpaweb.relations import RELATION_IDS, build_web, relation_grid, relation_instance, ss1_sides
from gpaweb.webdsl import Id, Merge, Split
from gpaweb.weight_lattice import WeightLattice


@pytest.mark.parametrize("n", [3, 4])
def test_every_grid_instance_is_well_typed(n):
    grid = relation_grid(n)
    assert {r for r, _ in grid} == set(RELATION_IDS)
    for rel, params in grid:
        lhs, rhs = relation_instance(rel, params, n)
        assert (lhs.dom, lhs.cod) == (rhs.dom, rhs.cod)
        for _, w in lhs.terms + rhs.terms:
            assert w.generator_count() <= 6


def test_grid_sizes():
    assert len(relation_grid(3)) == 39
    assert len(relation_grid(4)) == 108
    assert relation_grid(3) == relation_grid(3)


def test_bad_parameters():
    with pytest.raises(ValueError):
        relation_instance("BIGON", {"j": 2, "k": 2}, 3)
    with pytest.raises(ValueError):
        relation_instance("BIGON", {"j": 1}, 3)
    with pytest.raises(ValueError):
        relation_instance("BIGON", {"j": 1, "k": 1, "x": 1}, 3)
    with pytest.raises(ValueError):
        relation_instance("NOPE", {}, 3)
    with pytest.raises(ValueError):
        relation_instance("SLN-L", {"m": 3}, 3)
    with pytest.raises(ValueError):
        relation_grid(3, ["NOPE"])


def test_zero_labels_are_erased():
    w = build_web(3, (2, 0), [("split", 2, 0), ("id", 0)], [("merge", 0, 2)])
    assert w.dom == (2,)
    assert w.layers == ()
    w = build_web(3, (1, 1), [("merge", 1, 1)], [("split", 1, 1)])
    assert w.layers == ((Merge(1, 1),), (Split(1, 1),))
    assert build_web(3, (2,), [("id", 2)]).layers == ()


def test_bigon_coefficient():
    lhs, rhs = relation_instance("BIGON", {"j": 1, "k": 2}, 4)
    assert rhs.terms[0][0] == 3


def test_square_switch_uses_signed_weights():
    # m - l + j - k = -1: weights 1, -1
    _, rhs = ss1_sides(3, 1, 2, 1, 1)
    assert [c for c, _ in rhs.terms] == [1, -1]


def test_ss2_weights_mirror_ss1():
    # SS2(m, l) reflects SS1(l, m): same weights
    for m, l, j, k in [(1, 2, 1, 1), (2, 1, 1, 1), (1, 2, 1, 2), (2, 2, 2, 1)]:
        try:
            _, r1 = relation_instance("SS1", {"m": l, "l": m, "j": j, "k": k}, 4)
            _, r2 = relation_instance("SS2", {"m": m, "l": l, "j": j, "k": k}, 4)
        except ValueError:
            continue
        assert [c for c, _ in r1.terms] == [c for c, _ in r2.terms]


def test_special_square_switch_rhs():
    lhs, rhs = relation_instance("SS1-SPECIAL", {"m": 2}, 3)
    assert lhs.dom == (2, 1)
    coeffs = sorted(c for c, _ in rhs.terms)
    assert coeffs == [1, 1]
    assert any(all(isinstance(x, Id) for layer in w.layers for x in layer) for _, w in rhs.terms)


def test_lollipops():
    lhs, rhs = relation_instance("LOLLIPOP-B", {}, 3)
    assert lhs.dom == () and lhs.cod == ()
    lhs, rhs = relation_instance("LOLLIPOP-A", {}, 4)
    assert lhs.dom == (4,)


@pytest.mark.parametrize("rel", RELATION_IDS)
def test_each_family_holds_on_weight_lattice_n3(rel):
    g = WeightLattice(3)
    ev = Evaluator(g, QQ)
    for r, params in relation_grid(3, [rel]):
        lhs, rhs = relation_instance(r, params, 3)
        rep = verify_relation(g, (lhs, rhs), exhaustive_starts(g, lhs.dom, [g.base_vertex()]),
                              QQ, evaluator=ev)
        assert rep["disagreements"] == 0, (r, params, rep["failures"][:1])
        assert rep["pairs_tested"] > 0
