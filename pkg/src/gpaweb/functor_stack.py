"""Vector bundles over a building, path functors, and fiber matrices.

Objects of Vec(building) are represented only with finite support: a
:class:`BundleObject` maps vertices to dimensions.  The path functor F_sigma
sends V to the bundle whose fiber at i is the sum of V over all paths of type
sigma leaving i.  A graph planar algebra functional f : sigma -> tau induces a
natural map F_sigma -> F_tau; at fixed endpoints (b, a) its matrix has rows
indexed by P(tau, b, a), columns by P(sigma, b, a) and entries f(p, q).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Optional, Sequence, Union

from .coeffs import Field
from .gpa_eval import Evaluator, path_json
from .graph_core import BuildingGraph, Path, enumerate_paths, paths_between, reverse_type
from .weight_lattice import WeightLattice, normalize
from .webdsl import LinComb, Web, tensor


# -- bundles and path functors ------------------------------------------------------

@dataclass
class BundleObject:
    dims: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for v, d in self.dims.items():
            if not isinstance(d, int) or d < 0:
                raise ValueError(f"dimension at {v!r} must be a nonnegative integer")
        self.dims = {v: d for v, d in self.dims.items() if d}

    @classmethod
    def point(cls, a) -> "BundleObject":
        return cls({a: 1})

    def dim(self, v) -> int:
        return self.dims.get(v, 0)

    def support(self) -> list:
        return list(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __add__(self, other: "BundleObject") -> "BundleObject":
        out = dict(self.dims)
        for v, d in other.dims.items():
            out[v] = out.get(v, 0) + d
        return BundleObject(out)


def apply_F(g: BuildingGraph, sigma: Sequence[int], X: BundleObject):
    """F_sigma(X) with its basis: fiber i is spanned by pairs (path from i, index in X_end)."""
    sigma = tuple(sigma)
    back = reverse_type(g.n, sigma)
    basis: dict = {}
    for a in X.support():
        for rp in enumerate_paths(g, a, back):
            p = Path(tuple(reversed(rp.vertices)), sigma)
            for k in range(X.dim(a)):
                basis.setdefault(p.start, []).append((p, k))
    return BundleObject({i: len(b) for i, b in basis.items()}), basis


def apply_F_morphism(g: BuildingGraph, sigma, phi: dict, X: BundleObject, Y: BundleObject, fld: Field):
    """F_sigma(phi) for phi = {vertex: dim Y_v x dim X_v matrix}, fiberwise."""
    _, bx = apply_F(g, sigma, X)
    _, by = apply_F(g, sigma, Y)
    out = {}
    for i in set(bx) | set(by):
        rows = by.get(i, [])
        cols = bx.get(i, [])
        index = {b: r for r, b in enumerate(rows)}
        mat = [[fld.zero] * len(cols) for _ in rows]
        for c, (p, k) in enumerate(cols):
            block = phi.get(p.end)
            if block is None:
                continue
            for k2 in range(Y.dim(p.end)):
                mat[index[(p, k2)]][c] = fld.reduce(block[k2][k])
        out[i] = (rows, cols, mat)
    return out


# -- functionals ---------------------------------------------------------------------

@dataclass
class TableFunctional:
    """A functional given by an explicit table on a finite window of vertices."""

    n: int
    dom: tuple
    cod: tuple
    table: dict
    window: Optional[frozenset] = None

    def value(self, p1: Path, p2: Path, fld: Field):
        for p in (p1, p2):
            if self.window is not None and not set(p.vertices) <= self.window:
                raise ValueError("path leaves the functional's window")
        return fld.reduce(self.table.get((p1.vertices, p2.vertices), 0))


Functional = Union[Web, LinComb, TableFunctional]


def _types(f: Functional) -> tuple[tuple, tuple]:
    return tuple(f.dom), tuple(f.cod)


def _value_map(ev: Evaluator, f: Functional, p: Path) -> Callable:
    if isinstance(f, TableFunctional):
        return lambda q: f.value(p, q, ev.field)
    out = ev.forward(f, p.vertices) if isinstance(f, Web) else ev.forward_lincomb(f, p.vertices)
    return lambda q: out.get(q.vertices, ev.field.zero)


@dataclass
class NatMatrix:
    sigma: tuple
    tau: tuple
    base: object
    target: object
    rows: list
    cols: list
    entries: list

    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_json(self, g: BuildingGraph, fld: Field) -> dict:
        return {
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "base": g.vertex_json(self.base),
            "target": g.vertex_json(self.target),
            "rows": [path_json(g, p) for p in self.rows],
            "cols": [path_json(g, p) for p in self.cols],
            "entries": [[r, c, fld.to_json(x)] for r, row in enumerate(self.entries)
                        for c, x in enumerate(row) if x != fld.zero],
        }


def nat_matrix(g: BuildingGraph, f: Functional, b, a, fld: Field,
               evaluator: Optional[Evaluator] = None) -> NatMatrix:
    sigma, tau = _types(f)
    ev = evaluator or Evaluator(g, fld)
    cols = paths_between(g, b, a, sigma)
    rows = paths_between(g, b, a, tau)
    entries = [[fld.zero] * len(cols) for _ in rows]
    for c, p in enumerate(cols):
        val = _value_map(ev, f, p)
        for r, q in enumerate(rows):
            entries[r][c] = val(q)
    return NatMatrix(sigma, tau, b, a, rows, cols, entries)


def matmul(A, B, fld: Field, width: Optional[int] = None):
    """A @ B; pass ``width`` when B may have no rows."""
    if not A:
        return []
    inner = len(B)
    if width is None:
        width = len(B[0]) if B else 0
    out = [[fld.zero] * width for _ in A]
    for i, row in enumerate(A):
        for t in range(inner):
            x = row[t]
            if x == fld.zero:
                continue
            for j, y in enumerate(B[t]):
                if y != fld.zero:
                    out[i][j] = fld.add(out[i][j], fld.mul(x, y))
    return out


def induced_components(g: BuildingGraph, f: Functional, X: BundleObject, fld: Field,
                       evaluator: Optional[Evaluator] = None) -> dict:
    """The component F_sigma(X) -> F_tau(X) of the natural map induced by f, fiberwise."""
    sigma, tau = _types(f)
    ev = evaluator or Evaluator(g, fld)
    _, bs = apply_F(g, sigma, X)
    _, bt = apply_F(g, tau, X)
    out = {}
    for i in set(bs) | set(bt):
        cols, rows = bs.get(i, []), bt.get(i, [])
        mat = [[fld.zero] * len(cols) for _ in rows]
        for c, (p, k) in enumerate(cols):
            val = _value_map(ev, f, p)
            for r, (q, k2) in enumerate(rows):
                if k2 == k and q.end == p.end:
                    mat[r][c] = val(q)
        out[i] = (rows, cols, mat)
    return out


def naturality_check(g: BuildingGraph, f: Functional, phi: dict, X: BundleObject,
                     Y: BundleObject, fld: Field) -> bool:
    """Whether F_tau(phi) . f_X == f_Y . F_sigma(phi) at every vertex."""
    sigma, tau = _types(f)
    ev = Evaluator(g, fld)
    fx = induced_components(g, f, X, fld, ev)
    fy = induced_components(g, f, Y, fld, ev)
    Fs = apply_F_morphism(g, sigma, phi, X, Y, fld)
    Ft = apply_F_morphism(g, tau, phi, X, Y, fld)
    for i in set(fx) | set(fy) | set(Fs) | set(Ft):
        _, cols, a = fx.get(i, ([], [], []))
        _, _, b = Ft.get(i, ([], [], []))
        _, _, c = Fs.get(i, ([], [], []))
        _, _, d = fy.get(i, ([], [], []))
        width = len(cols) or len(Fs.get(i, ([], [], []))[1])
        if matmul(b, a, fld, width) != matmul(d, c, fld, width):
            return False
    return True


def tensor_functional(eta: TableFunctional, mu: TableFunctional, fld: Field) -> Callable:
    """Direct tensor product: (eta x mu)(p p', q q') = eta(p, q) mu(p', q')."""
    s1, t1 = len(eta.dom), len(eta.cod)

    def value(p: Path, q: Path):
        p1, p2 = p.split(s1)
        q1, q2 = q.split(t1)
        if p1.end != q1.end:
            return fld.zero
        return fld.mul(eta.value(p1, q1, fld), mu.value(p2, q2, fld))

    return value


def tensor_block_check(g: BuildingGraph, eta: Functional, mu: Functional, b, a, fld: Field) -> bool:
    """Matrix of eta x mu at (b, a) against the block product (id x mu)(eta x id).

    The block factor for eta x id has entry M(eta)_{q,p} whenever the sigma_2
    tails agree; the factor for id x mu has entry M(mu)_{p'',p'} whenever the
    tau_1 heads agree.
    """
    s1, t1 = _types(eta)
    s2, t2 = _types(mu)
    ev = Evaluator(g, fld)
    cols = paths_between(g, b, a, s1 + s2)
    mids = paths_between(g, b, a, t1 + s2)
    rows = paths_between(g, b, a, t1 + t2)
    windows = [f.window for f in (eta, mu) if isinstance(f, TableFunctional) and f.window is not None]
    for w in windows:
        for p in cols + mids + rows:
            if not set(p.vertices) <= w:
                raise ValueError("window too small: a required path leaves it")

    # direct matrix of the tensor product
    if isinstance(eta, TableFunctional) or isinstance(mu, TableFunctional):
        if not (isinstance(eta, TableFunctional) and isinstance(mu, TableFunctional)):
            raise ValueError("mixing table functionals with webs is not supported")
        direct_value = tensor_functional(eta, mu, fld)
        direct = [[direct_value(p, q) for p in cols] for q in rows]
    else:
        te = tensor(eta, mu) if isinstance(eta, Web) and isinstance(mu, Web) \
            else _tensor_lc(_as_lc(eta), _as_lc(mu))
        direct = nat_matrix(g, te, b, a, fld, ev).entries

    # block factors, built from the matrices of eta and mu at split endpoints
    eta_cache: dict = {}
    mu_cache: dict = {}

    def eta_mat(c):
        if c not in eta_cache:
            eta_cache[c] = nat_matrix(g, eta, b, c, fld, ev)
        return eta_cache[c]

    def mu_mat(c):
        if c not in mu_cache:
            mu_cache[c] = nat_matrix(g, mu, c, a, fld, ev)
        return mu_cache[c]

    first = [[fld.zero] * len(cols) for _ in mids]
    for ci, p in enumerate(cols):
        ph, pt = p.split(len(s1))
        M = eta_mat(ph.end)
        col = M.cols.index(ph)
        for ri, m in enumerate(mids):
            mh, mt = m.split(len(t1))
            if mt == pt:
                first[ri][ci] = M.entries[M.rows.index(mh)][col]
    second = [[fld.zero] * len(mids) for _ in rows]
    for ci, m in enumerate(mids):
        mh, mt = m.split(len(t1))
        M = mu_mat(mh.end)
        col = M.cols.index(mt)
        for ri, r in enumerate(rows):
            rh, rt = r.split(len(t1))
            if rh == mh:
                second[ri][ci] = M.entries[M.rows.index(rt)][col]
    return matmul(second, first, fld, len(cols)) == direct


def _as_lc(f) -> LinComb:
    return LinComb.of(f) if isinstance(f, Web) else f


def _tensor_lc(x: LinComb, y: LinComb) -> LinComb:
    terms = tuple((a * b, tensor(u, v)) for a, u in x.terms for b, v in y.terms)
    return LinComb(x.n, x.dom + y.dom, x.cod + y.cod, terms)


def random_table_functional(g: BuildingGraph, sigma, tau, window: Iterable, rng: random.Random,
                            density: float = 0.5, max_coeff: int = 5) -> TableFunctional:
    """Random sparse functional supported on matched pairs inside ``window``."""
    window = frozenset(window)
    table = {}
    for b in sorted(window, key=repr):
        for p in enumerate_paths(g, b, sigma):
            if not set(p.vertices) <= window:
                continue
            for q in paths_between(g, b, p.end, tau):
                if set(q.vertices) <= window and rng.random() < density:
                    table[(p.vertices, q.vertices)] = rng.randint(-max_coeff, max_coeff)
    return TableFunctional(g.n, tuple(sigma), tuple(tau), table, window)


# -- group actions ---------------------------------------------------------------------

class GroupAction:
    """A single graph automorphism, given by a vertex map, with a claimed type shift."""

    def __init__(self, g: BuildingGraph, vertex_map: Callable, type_shift: int, name: str = ""):
        self.g = g
        self.vertex_map = vertex_map
        self.type_shift = type_shift % g.n
        self.name = name

    def __call__(self, v):
        return self.vertex_map(v)

    def act_path(self, p: Path) -> Path:
        return Path(tuple(self(v) for v in p.vertices), p.labels)

    def act_bundle(self, X: BundleObject) -> BundleObject:
        """(A_g X)_{g(v)} = X_v."""
        return BundleObject({self(v): d for v, d in X.dims.items()})

    def type_rotation_witness(self, vertices: Iterable) -> Optional[tuple]:
        """An edge (or vertex) showing the map is not a type-rotating automorphism, or None."""
        g = self.g
        for v in vertices:
            if g.type_of(self(v)) != (g.type_of(v) + self.type_shift) % g.n:
                return (v, None, None)
            for m in range(1, g.n):
                for w in g.neighbors(v, m):
                    if g.edge_label(self(v), self(w)) != m:
                        return (v, w, m)
        return None


def translation(g: WeightLattice, shift: Sequence[int]) -> GroupAction:
    shift = tuple(shift)
    if len(shift) != g.n:
        raise ValueError("translation vector has the wrong length")

    def move(v):
        return normalize(x + s for x, s in zip(v, shift))

    return GroupAction(g, move, -sum(shift), name=f"translate{list(shift)}")


def translation_to(g: WeightLattice, src, dst) -> GroupAction:
    return translation(g, [b - a for a, b in zip(src, dst)])


def negation(g: WeightLattice) -> GroupAction:
    """v -> -v: a graph map that complements labels, so not type-rotating for n > 2."""
    return GroupAction(g, lambda v: normalize(-x for x in v), 0, name="negate")


def check_invariance(g: BuildingGraph, f: Functional, action: GroupAction,
                     samples: Iterable[Path], fld: Field, max_witnesses: int = 10) -> dict:
    """Compare f(p, q) with f(g p, g q) on every pair reachable from the sampled p."""
    samples = list(samples)
    verts = {v for p in samples for v in p.vertices}
    bad = action.type_rotation_witness(sorted(verts, key=repr))
    if bad is not None:
        v, w, m = bad
        raise ValueError(
            f"action {action.name or '?'} is not type-rotating: witness "
            f"{g.vertex_json(v)} -> {None if w is None else g.vertex_json(w)} (label {m})")
    ev = Evaluator(g, fld)
    tau = tuple(f.cod)
    zero = fld.zero
    pairs = 0
    n_fail = 0
    failures = []

    def record(p, q, a, b):
        nonlocal n_fail
        n_fail += 1
        if len(failures) < max_witnesses:
            failures.append({"p1": path_json(g, p), "p2": path_json(g, Path(q, tau)),
                             "value": fld.to_json(a), "moved_value": fld.to_json(b)})

    for p in samples:
        gp = action.act_path(p)
        here = _outputs(ev, f, p)
        there = _outputs(ev, f, gp)
        hit = set()
        for q, a in here.items():
            gq = tuple(action(v) for v in q)
            hit.add(gq)
            b = there.get(gq, zero)
            pairs += 1
            if a != b:
                record(p, q, a, b)
        for gq, b in there.items():
            if gq not in hit:
                pairs += 1
                if b != zero:
                    record(gp, gq, zero, b)
    return {"action": action.name, "pairs_tested": pairs, "disagreements": n_fail,
            "failures": failures}


def _outputs(ev: Evaluator, f: Functional, p: Path) -> dict:
    """Values of f against p, keyed by the vertex sequence of the second path."""
    if isinstance(f, TableFunctional):
        return {b: ev.field.reduce(c) for (a, b), c in f.table.items() if a == p.vertices}
    if isinstance(f, Web):
        return ev.forward(f, p.vertices)
    return ev.forward_lincomb(f, p.vertices)


# -- fiber functor -----------------------------------------------------------------------

@dataclass
class FiberMatrix:
    rows: list
    cols: list
    entries: list

    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


def fiber_basis(g: WeightLattice, obj: Sequence[int], base) -> list[Path]:
    return enumerate_paths(g, base, tuple(obj))


def fiber_matrices(g: BuildingGraph, w: Union[Web, LinComb], base, fld: Field,
                   evaluator: Optional[Evaluator] = None) -> FiberMatrix:
    """Matrix of w under the fiber functor at ``base`` (translation action, simply transitive)."""
    if not isinstance(g, WeightLattice):
        raise ValueError("fiber matrices need the simply transitive translation action "
                         "of the weight lattice")
    ev = evaluator or Evaluator(g, fld)
    cols = fiber_basis(g, w.dom, base)
    rows = fiber_basis(g, w.cod, base)
    index = {q.vertices: r for r, q in enumerate(rows)}
    entries = [[fld.zero] * len(cols) for _ in rows]
    for c, p in enumerate(cols):
        out = ev.forward(w, p.vertices) if isinstance(w, Web) else ev.forward_lincomb(w, p.vertices)
        for k, v in out.items():
            entries[index[k]][c] = v
    return FiberMatrix(rows, cols, entries)


def fiber_tensor_reindex(g: WeightLattice, left: Sequence[int], right: Sequence[int], base) -> dict:
    """Map each path of type left+right from base to its (head, translated tail) index pair."""
    heads = fiber_basis(g, left, base)
    tails = fiber_basis(g, right, base)
    hi = {p: i for i, p in enumerate(heads)}
    ti = {p.vertices: i for i, p in enumerate(tails)}
    out = {}
    for p in fiber_basis(g, tuple(left) + tuple(right), base):
        h, t = p.split(len(left))
        act = translation_to(g, h.end, base)
        out[p] = (hi[h], ti[act.act_path(t).vertices])
    return out


def kron_check(g: WeightLattice, f: Union[Web, LinComb], h: Union[Web, LinComb], base, fld: Field) -> bool:
    """Whether the fiber matrix of f x h is the Kronecker product of those of f and h."""
    ev = Evaluator(g, fld)
    Mf = fiber_matrices(g, f, base, fld, ev)
    Mh = fiber_matrices(g, h, base, fld, ev)
    if isinstance(f, Web) and isinstance(h, Web):
        fh = tensor(f, h)
    else:
        fh = _tensor_lc(_as_lc(f), _as_lc(h))
    M = fiber_matrices(g, fh, base, fld, ev)
    ci = fiber_tensor_reindex(g, f.dom, h.dom, base)
    ri = fiber_tensor_reindex(g, f.cod, h.cod, base)
    for r, q in enumerate(M.rows):
        a, b = ri[q]
        for c, p in enumerate(M.cols):
            x, y = ci[p]
            want = fld.mul(Mf.entries[a][x], Mh.entries[b][y])
            if M.entries[r][c] != want:
                return False
    return True
