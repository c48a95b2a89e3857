"""Edge-labelled directed graphs of type A~_{n-1} buildings.

A vertex x has a type in Z/n and the edge x -> y carries the label
``type(x) - type(y) mod n`` in ``[1, n-1]``.  Label ``n`` never labels an
edge; inside path types it stands for a step that stays put.

Concrete models subclass :class:`BuildingGraph` and supply ``type_of``,
``_compute_neighbors`` and ``edge_label``; everything else (memoised neighbour
sets, paths, balls, export) lives here.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterator, Optional, Sequence

Vertex = Hashable


class PrecisionError(ArithmeticError):
    """Raised when a lattice computation would exceed the configured precision."""

    def __init__(self, msg: str, required: int = None):
        super().__init__(msg)
        self.required = required


@dataclass(frozen=True)
class Path:
    vertices: tuple
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.labels) + 1:
            raise ValueError("a path has one more vertex than it has steps")

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def type(self) -> tuple[int, ...]:
        return self.labels

    def __len__(self):
        return len(self.labels)

    def concat(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise ValueError("paths do not meet")
        return Path(self.vertices + other.vertices[1:], self.labels + other.labels)

    def split(self, k: int) -> tuple["Path", "Path"]:
        """Split after the first ``k`` steps."""
        return (Path(self.vertices[: k + 1], self.labels[:k]),
                Path(self.vertices[k:], self.labels[k:]))


def empty_path(v) -> Path:
    return Path((v,), ())


class BuildingGraph:
    """Lazy, memoised 1-skeleton of a locally finite building."""

    kind = "abstract"

    def __init__(self, n: int, q: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.q = q
        self._nbr: dict = {}
        self._nbr_set: dict = {}

    # -- model hooks -------------------------------------------------------
    def base_vertex(self):
        raise NotImplementedError

    def type_of(self, v) -> int:
        raise NotImplementedError

    def _compute_neighbors(self, v, m: int) -> list:
        raise NotImplementedError

    def edge_label(self, x, y) -> Optional[int]:
        raise NotImplementedError

    def vertex_json(self, v):
        raise NotImplementedError

    def vertex_str(self, v) -> str:
        return json.dumps(self.vertex_json(v), separators=(",", ":"))

    # -- shared machinery --------------------------------------------------
    def check_label(self, m: int, allow_n: bool = False):
        hi = self.n if allow_n else self.n - 1
        if not (isinstance(m, int) and 1 <= m <= hi):
            raise ValueError(f"label {m!r} outside [1, {hi}]")

    def neighbors(self, v, m: int) -> tuple:
        """Vertices y with an edge v -> y of label m, in deterministic order."""
        key = (v, m)
        got = self._nbr.get(key)
        if got is None:
            self.check_label(m)
            got = tuple(self._compute_neighbors(v, m))
            # idempotent: a racing computation produces the same tuple
            got = self._nbr.setdefault(key, got)
        return got

    def neighbor_set(self, v, m: int) -> frozenset:
        key = (v, m)
        got = self._nbr_set.get(key)
        if got is None:
            got = self._nbr_set.setdefault(key, frozenset(self.neighbors(v, m)))
        return got

    def all_neighbors(self, v) -> list:
        return [w for m in range(1, self.n) for w in self.neighbors(v, m)]

    def has_edge(self, x, y, m: int) -> bool:
        return y in self.neighbor_set(x, m)

    def step(self, v, m: int) -> tuple:
        """Endpoints of one step of label m (label n stays at v)."""
        if m == self.n:
            return (v,)
        return self.neighbors(v, m)

    def split_vertices(self, a, c, j: int) -> list:
        """Vertices b with a -> b of label j and b -> c completing a -> c.

        When ``c == a`` the completing label is ``n - j`` and every j-neighbour
        qualifies; otherwise b -> c has label ``label(a -> c) - j``.
        """
        self.check_label(j)
        if a == c:
            return list(self.neighbors(a, j))
        total = self.edge_label(a, c)
        if total is None or total <= j:
            return []
        k = total - j
        return [b for b in self.neighbors(a, j) if self.has_edge(b, c, k)]

    def random_neighbor(self, v, m: int, rng):
        """A uniformly random m-neighbour of v."""
        return rng.choice(self.neighbors(v, m))

    def degree_profile(self, v) -> dict[int, int]:
        return {m: len(self.neighbors(v, m)) for m in range(1, self.n)}


def enumerate_paths(g: BuildingGraph, start, sigma: Sequence[int]) -> list[Path]:
    """All paths of type ``sigma`` leaving ``start``, in deterministic order."""
    for m in sigma:
        g.check_label(m, allow_n=True)
    paths = [empty_path(start)]
    for m in sigma:
        nxt = []
        for p in paths:
            for w in g.step(p.end, m):
                nxt.append(Path(p.vertices + (w,), p.labels + (m,)))
        paths = nxt
    return paths


def reverse_type(n: int, sigma: Sequence[int]) -> tuple[int, ...]:
    """Type of the reversed path: labels reversed and complemented (n stays n)."""
    return tuple(n if m == n else n - m for m in reversed(sigma))


def paths_between(g: BuildingGraph, b, a, sigma: Sequence[int]) -> list[Path]:
    """P(sigma, b, a): paths of type sigma from b to a."""
    return [p for p in enumerate_paths(g, b, sigma) if p.end == a]


def ball(g: BuildingGraph, center, radius: int) -> list:
    """Vertices within graph distance ``radius`` of ``center`` (BFS order)."""
    seen = {center: 0}
    order = [center]
    queue = deque([center])
    while queue:
        v = queue.popleft()
        if seen[v] == radius:
            continue
        for w in g.all_neighbors(v):
            if w not in seen:
                seen[w] = seen[v] + 1
                order.append(w)
                queue.append(w)
    return order


def is_triangle(g: BuildingGraph, a, b, c) -> bool:
    """Whether the directed 3-cycle a -> b -> c -> a exists."""
    return (g.edge_label(a, b) is not None and g.edge_label(b, c) is not None
            and g.edge_label(c, a) is not None)


def tetrahedron_check(g: BuildingGraph, a, b, c, d) -> bool:
    """Audit the tetrahedron property on one quadruple.

    Requires the cycles a->b->c->a and a->d->b->a with
    label(a->d) + label(d->b) + label(b->c) < n.  Returns whether the cycles
    a->c->d->a and b->d->c->b exist.
    """
    if not (is_triangle(g, a, b, c) and is_triangle(g, a, d, b)):
        raise ValueError("precondition cycles a->b->c->a and a->d->b->a are absent")
    total = g.edge_label(a, d) + g.edge_label(d, b) + g.edge_label(b, c)
    if total >= g.n:
        raise ValueError(f"labels of a->d, d->b, b->c sum to {total} >= n")
    return is_triangle(g, a, c, d) and is_triangle(g, b, d, c)


def qualifying_quadruples(g: BuildingGraph, a) -> Iterator[tuple]:
    """All (a, b, c, d) at a fixed ``a`` meeting the tetrahedron precondition."""
    n = g.n
    for d in g.all_neighbors(a):
        ad = g.edge_label(a, d)
        for b in g.all_neighbors(a):
            db = g.edge_label(d, b)
            if db is None or ad + db >= n:
                continue
            for bc in range(1, n - ad - db):
                for c in g.neighbors(b, bc):
                    if g.edge_label(c, a) is not None:
                        yield (a, b, c, d)


# -- export -------------------------------------------------------------------

def ball_edges(g: BuildingGraph, vertices: Sequence) -> list[tuple]:
    inside = set(vertices)
    edges = []
    for v in vertices:
        for m in range(1, g.n):
            for w in g.neighbors(v, m):
                if w in inside:
                    edges.append((v, w, m))
    return edges


def export_json(g: BuildingGraph, center, radius: int) -> dict:
    verts = ball(g, center, radius)
    index = {v: i for i, v in enumerate(verts)}
    return {
        "model": g.kind,
        "n": g.n,
        "q": g.q,
        "vertices": [{"id": index[v], "key": g.vertex_json(v), "type": g.type_of(v)}
                     for v in verts],
        "edges": [{"src": index[x], "dst": index[y], "label": m}
                  for x, y, m in ball_edges(g, verts)],
    }


def export_dot(g: BuildingGraph, center, radius: int) -> str:
    verts = ball(g, center, radius)
    index = {v: i for i, v in enumerate(verts)}
    lines = [f"digraph building {{  // {g.kind} n={g.n} q={g.q}"]
    for v in verts:
        label = g.vertex_str(v).replace('"', "'")
        lines.append(f'  v{index[v]} [label="{label}\\ntype {g.type_of(v)}"];')
    for x, y, m in ball_edges(g, verts):
        lines.append(f'  v{index[x]} -> v{index[y]} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
