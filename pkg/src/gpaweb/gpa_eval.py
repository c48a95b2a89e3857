"""Evaluating webs in the graph planar algebra of a building.

Every generator maps to a 0/1 functional on matched pairs of paths, so a web
evaluates to the number of consistent labelings of its regions by vertices,
read in the coefficient field.  The evaluation sweeps the web bottom to top,
carrying a sparse map from intermediate vertex sequences to accumulated
scalars.

A vertex sequence for an object (l_1, ..., l_r) has r + 1 entries; a label-n
strand contributes a repeated vertex (an empty step).
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .coeffs import Field
from .graph_core import BuildingGraph, Path, enumerate_paths
from .webdsl import Generator, Id, LinComb, Merge, NCap, NCup, Split, Web

State = tuple


def _segments(g: BuildingGraph, gen: Generator, seg: tuple) -> list[tuple]:
    """Possible output vertices (after the left end) of one generator.

    ``seg`` holds the generator's input vertices, left end first.
    """
    n = g.n
    if isinstance(gen, Id):
        return [seg[1:]]
    if isinstance(gen, Merge):
        a, _, c = seg
        if gen.j + gen.k == n:
            return [(c,)] if a == c else []
        return [(c,)] if g.has_edge(a, c, gen.j + gen.k) else []
    if isinstance(gen, Split):
        a, c = seg
        return [(b, c) for b in g.split_vertices(a, c, gen.j)]
    if isinstance(gen, NCap):
        return [()]
    if isinstance(gen, NCup):
        return [(seg[0],)]
    raise TypeError(f"unknown generator {gen!r}")


class Evaluator:
    """Evaluates webs on one building graph over one coefficient field."""

    def __init__(self, g: BuildingGraph, field: Field):
        self.g = g
        self.field = field
        self._layer_cache: dict = {}

    def layer_step(self, layer: tuple, state: State) -> tuple[State, ...]:
        key = (layer, state)
        got = self._layer_cache.get(key)
        if got is not None:
            return got
        n = self.g.n
        options = []
        pos = 0
        for gen in layer:
            width = len(gen.inputs(n))
            seg = state[pos: pos + width + 1]
            opts = _segments(self.g, gen, seg)
            if not opts:
                return self._layer_cache.setdefault(key, ())
            options.append(opts)
            pos += width
        out = tuple((state[0],) + sum(choice, ()) for choice in product(*options))
        return self._layer_cache.setdefault(key, out)

    def forward(self, web: Web, start: State) -> dict:
        """Map from end vertex sequences to the web's value against ``start``."""
        f = self.field
        cur = {tuple(start): f.one}
        for layer in web.layers:
            nxt: dict = {}
            for state, val in cur.items():
                for out in self.layer_step(layer, state):
                    nxt[out] = f.add(nxt[out], val) if out in nxt else val
            cur = nxt
        return cur

    def forward_lincomb(self, lc: LinComb, start: State) -> dict:
        f = self.field
        total: dict = {}
        for coeff, web in lc.terms:
            c = f.reduce(coeff)
            for out, val in self.forward(web, start).items():
                v = f.mul(c, val)
                total[out] = f.add(total[out], v) if out in total else v
        return total

    def eval_web(self, web: Web, p1: Path, p2: Path):
        check_boundary(self.g, web.dom, web.cod, p1, p2)
        return self.forward(web, p1.vertices).get(p2.vertices, self.field.zero)

    def eval_lincomb(self, lc: LinComb, p1: Path, p2: Path):
        check_boundary(self.g, lc.dom, lc.cod, p1, p2)
        return self.forward_lincomb(lc, p1.vertices).get(p2.vertices, self.field.zero)


def check_path(g: BuildingGraph, p: Path):
    for (x, y), m in zip(zip(p.vertices, p.vertices[1:]), p.labels):
        if m == g.n:
            if x != y:
                raise ValueError("a label-n step must stay at its vertex")
        elif g.edge_label(x, y) != m:
            raise ValueError(f"no edge of label {m} between consecutive path vertices")


def check_boundary(g: BuildingGraph, dom, cod, p1: Path, p2: Path):
    if tuple(p1.labels) != tuple(dom):
        raise ValueError(f"p1 has type {list(p1.labels)}, expected {list(dom)}")
    if tuple(p2.labels) != tuple(cod):
        raise ValueError(f"p2 has type {list(p2.labels)}, expected {list(cod)}")
    check_path(g, p1)
    check_path(g, p2)


def eval_generator(g: BuildingGraph, gen: Generator, p_in: Path, p_out: Path, field: Field):
    from .webdsl import generator_web
    return Evaluator(g, field).eval_web(generator_web(g.n, gen), p_in, p_out)


def eval_web(g: BuildingGraph, w: Web, p1: Path, p2: Path, field: Field):
    return Evaluator(g, field).eval_web(w, p1, p2)


def eval_lincomb(g: BuildingGraph, lc: LinComb, p1: Path, p2: Path, field: Field):
    return Evaluator(g, field).eval_lincomb(lc, p1, p2)


# -- boundary samplers -----------------------------------------------------------

def path_from_vertices(vertices: Sequence, labels: Sequence[int]) -> Path:
    return Path(tuple(vertices), tuple(labels))


def exhaustive_starts(g: BuildingGraph, dom: Sequence[int], bases: Iterable) -> Iterator[Path]:
    """All domain-type paths out of each base vertex."""
    for b in bases:
        yield from enumerate_paths(g, b, dom)


def random_walk(g: BuildingGraph, start, length: int, rng: random.Random):
    v = start
    for _ in range(length):
        v = g.random_neighbor(v, rng.randrange(1, g.n), rng)
    return v


def random_path(g: BuildingGraph, start, dom: Sequence[int], rng: random.Random) -> Path:
    verts = [start]
    for m in dom:
        v = verts[-1]
        verts.append(v if m == g.n else g.random_neighbor(v, m, rng))
    return Path(tuple(verts), tuple(dom))


def random_starts(g: BuildingGraph, dom: Sequence[int], rng: random.Random,
                  base_radius: int = 1, patience: int = 2000) -> Iterator[Path]:
    """Distinct random domain-type paths.

    Base vertices come from random walks of length at most ``base_radius`` from
    the base vertex of the model and cycle through the n types.  Each step of the
    path picks a uniformly random neighbour of the required label.  Stops after
    ``patience`` consecutive repeats.
    """
    origin = g.base_vertex()
    seen = set()
    misses = 0
    i = 0
    while misses < patience:
        want = i % g.n
        i += 1
        base = None
        for _ in range(100):
            cand = random_walk(g, origin, rng.randint(0, base_radius), rng)
            if g.type_of(cand) == want:
                base = cand
                break
        if base is None:
            base = cand
        p = random_path(g, base, dom, rng)
        key = p.vertices
        if key in seen:
            misses += 1
            continue
        misses = 0
        seen.add(key)
        yield p


# -- relation checks ---------------------------------------------------------------

def path_json(g: BuildingGraph, p: Path) -> dict:
    return {"type": list(p.labels), "vertices": [g.vertex_json(v) for v in p.vertices]}


def verify_relation(g: BuildingGraph, rel: tuple[LinComb, LinComb], samples: Iterable[Path],
                    field: Field, *, relation: str = "", params: Optional[dict] = None,
                    min_pairs: Optional[int] = None, max_witnesses: int = 10,
                    evaluator: Optional[Evaluator] = None) -> dict:
    """Compare both sides on every boundary pair reachable from the sampled p1 paths.

    For each p1 the full output maps of both sides are computed; every p2 in
    the union of their supports is one tested pair.  With ``min_pairs`` the
    sampling stops once that many pairs have been tested.
    """
    lhs, rhs = rel
    if (lhs.dom, lhs.cod) != (rhs.dom, rhs.cod):
        raise ValueError("relation sides have different types")
    ev = evaluator or Evaluator(g, field)
    zero = field.zero
    pairs = 0
    starts = 0
    failures = []
    n_fail = 0
    for p1 in samples:
        if min_pairs is not None and pairs >= min_pairs:
            break
        starts += 1
        L = ev.forward_lincomb(lhs, p1.vertices)
        R = ev.forward_lincomb(rhs, p1.vertices)
        keys = list(L) + [k for k in R if k not in L]
        for k in keys:
            a, b = L.get(k, zero), R.get(k, zero)
            pairs += 1
            if a != b:
                n_fail += 1
                if len(failures) < max_witnesses:
                    p2 = Path(k, tuple(lhs.cod))
                    failures.append({
                        "p1": path_json(g, p1),
                        "p2": path_json(g, p2),
                        "lhs": field.to_json(a),
                        "rhs": field.to_json(b),
                    })
    return {
        "relation": relation,
        "params": dict(sorted((params or {}).items())),
        "model": {"kind": g.kind, "n": g.n, "q": g.q},
        "field": str(field),
        "boundary_starts": starts,
        "pairs_tested": pairs,
        "disagreements": n_fail,
        "failures": failures,
    }
