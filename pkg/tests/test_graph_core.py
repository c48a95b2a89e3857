import json

import pytest

from gpaweb.graph_core import (
    Path, ball, empty_path, enumerate_paths, export_dot, export_json, paths_between,
    qualifying_quadruples, reverse_type, tetrahedron_check,
)
from gpaweb.weight_lattice import WeightLattice


def test_path_shape_is_checked():
    with pytest.raises(ValueError):
        Path((1, 2), ())


def test_path_concat_and_split():
    p = Path(("a", "b", "c"), (1, 2))
    h, t = p.split(1)
    assert h == Path(("a", "b"), (1,))
    assert t == Path(("b", "c"), (2,))
    assert h.concat(t) == p
    with pytest.raises(ValueError):
        t.concat(h)
    assert len(empty_path("x")) == 0


def test_reverse_type():
    assert reverse_type(3, (1, 3, 2)) == (1, 3, 2)
    assert reverse_type(4, (1, 1, 2)) == (2, 3, 3)


def test_enumerate_paths_counts():
    g = WeightLattice(4)
    # 4 choices for a 1-step, 6 for a 2-step, one for a stay
    assert len(enumerate_paths(g, g.base_vertex(), (1, 2, 4))) == 24
    assert enumerate_paths(g, g.base_vertex(), ()) == [empty_path(g.base_vertex())]


def test_bad_labels_rejected():
    g = WeightLattice(3)
    with pytest.raises(ValueError):
        g.neighbors(g.base_vertex(), 3)
    with pytest.raises(ValueError):
        enumerate_paths(g, g.base_vertex(), (4,))
    with pytest.raises(ValueError):
        WeightLattice(1)


def test_reversed_paths_have_reverse_type():
    g = WeightLattice(3)
    a = g.base_vertex()
    for p in enumerate_paths(g, a, (1, 2, 1)):
        back = tuple(reversed(p.vertices))
        rev = reverse_type(3, p.labels)
        assert Path(back, rev) in paths_between(g, p.end, a, rev)


def test_ball_sizes():
    g = WeightLattice(3)
    # hexagonal tiling: 1, 6, 12 vertices at distance 0, 1, 2
    assert len(ball(g, g.base_vertex(), 0)) == 1
    assert len(ball(g, g.base_vertex(), 1)) == 7
    assert len(ball(g, g.base_vertex(), 2)) == 19


def test_export_json_and_dot():
    g = WeightLattice(3)
    data = export_json(g, g.base_vertex(), 1)
    assert len(data["vertices"]) == 7
    assert len(data["edges"]) == 24
    json.dumps(data)
    for e in data["edges"]:
        src = data["vertices"][e["src"]]
        dst = data["vertices"][e["dst"]]
        assert (src["type"] - dst["type"]) % 3 == e["label"]
    dot = export_dot(g, g.base_vertex(), 1)
    assert dot.startswith("digraph") and dot.count("->") == 24


def test_tetrahedron_preconditions_enforced():
    g = WeightLattice(4)
    a = g.base_vertex()
    b = g.translate(a, {1})
    with pytest.raises(ValueError):
        tetrahedron_check(g, a, b, b, a)


def test_qualifying_quadruples_meet_precondition():
    g = WeightLattice(4)
    quads = list(qualifying_quadruples(g, g.base_vertex()))
    assert quads
    for a, b, c, d in quads:
        assert g.edge_label(a, d) + g.edge_label(d, b) + g.edge_label(b, c) < 4
        assert tetrahedron_check(g, a, b, c, d)


def test_n3_has_no_qualifying_quadruples():
    # three labels each at least 1 can never sum below 3
    g = WeightLattice(3)
    assert list(qualifying_quadruples(g, g.base_vertex())) == []
