"""Subspaces of F_q^n in reduced row echelon form.

These are the finite projective geometries that appear as vertex links of the
buildings.  A :class:`Subspace` is hashable and compares by its canonical
matrix, so it can be used directly as a dictionary key.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .coeffs import is_prime

Vector = tuple[int, ...]


def rref(rows: Iterable[Sequence[int]], n: int, q: int) -> tuple[Vector, ...]:
    """Reduced row echelon form over F_q with zero rows dropped."""
    mat = [[x % q for x in r] for r in rows]
    out = []
    col = 0
    r = 0
    while r < len(mat) and col < n:
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, q)
        mat[r] = [x * inv % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(x - c * y) % q for x, y in zip(mat[i], mat[r])]
        r += 1
        col += 1
    for row in mat[:r]:
        out.append(tuple(row))
    return tuple(out)


def nullspace(rows: Sequence[Sequence[int]], n: int, q: int) -> list[Vector]:
    """Basis of {x : r . x = 0 for every row r}."""
    red = rref(rows, n, q)
    pivots = [next(j for j, x in enumerate(r) if x) for r in red]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[f]) % q
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True, order=True)
class Subspace:
    q: int
    n: int
    rows: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __repr__(self):
        return f"Subspace(q={self.q}, n={self.n}, rows={[list(r) for r in self.rows]})"

    def __contains__(self, vec) -> bool:
        vec = tuple(x % self.q for x in vec)
        return rref(self.rows + (vec,), self.n, self.q) == self.rows

    def contains(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(r in self for r in other.rows)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        return canonicalize(data["rows"], data["n"], data["q"])


def _check_field(q: int):
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")


def _check_same(U: Subspace, V: Subspace):
    if (U.q, U.n) != (V.q, V.n):
        raise ValueError(f"ambient mismatch: F_{U.q}^{U.n} vs F_{V.q}^{V.n}")


def canonicalize(vectors: Iterable[Sequence[int]], n: int, q: int) -> Subspace:
    """Span of ``vectors`` in canonical form."""
    _check_field(q)
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector {v} does not lie in F_{q}^{n}")
    return Subspace(q, n, rref(vectors, n, q))


def zero_space(n: int, q: int) -> Subspace:
    return canonicalize([], n, q)


def full_space(n: int, q: int) -> Subspace:
    return canonicalize([tuple(int(i == j) for j in range(n)) for i in range(n)], n, q)


def join(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    return Subspace(U.q, U.n, rref(U.rows + V.rows, U.n, U.q))


def meet(U: Subspace, V: Subspace) -> Subspace:
    # U & V = ann(ann U + ann V) for the standard (nondegenerate) pairing
    _check_same(U, V)
    n, q = U.n, U.q
    ann = nullspace(U.rows, n, q) + nullspace(V.rows, n, q)
    return Subspace(q, n, rref(nullspace(ann, n, q), n, q))


def _rref_shapes(n: int, k: int):
    """Yield (pivots, free positions) for every k x n reduced echelon shape."""
    for pivots in combinations(range(n), k):
        free = []
        for i, pc in enumerate(pivots):
            for j in range(pc + 1, n):
                if j not in pivots:
                    free.append((i, j))
        yield pivots, free


def enumerate_subspaces(n: int, q: int, k: int) -> list[Subspace]:
    """All k-dimensional subspaces of F_q^n, sorted by canonical matrix."""
    _check_field(q)
    if k < 0 or k > n:
        return []
    out = []
    for pivots, free in _rref_shapes(n, k):
        for values in product(range(q), repeat=len(free)):
            mat = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                mat[i][pc] = 1
            for (i, j), x in zip(free, values):
                mat[i][j] = x
            out.append(Subspace(q, n, tuple(tuple(r) for r in mat)))
    out.sort(key=lambda s: s.rows)
    return out


def complement_basis(L: Subspace, U: Subspace) -> list[Vector]:
    """Rows of U extending a basis of L to a basis of U."""
    extra = []
    cur = L.rows
    for r in U.rows:
        nxt = rref(cur + (r,), U.n, U.q)
        if len(nxt) > len(cur):
            extra.append(r)
            cur = nxt
    return extra


def enumerate_between(L: Subspace, U: Subspace, k: int) -> list[Subspace]:
    """All k-dimensional W with L <= W <= U, sorted by canonical matrix."""
    _check_same(L, U)
    if not U.contains(L):
        raise ValueError("lower subspace is not contained in the upper one")
    if k < L.dim or k > U.dim:
        return []
    q, n = U.q, U.n
    comp = complement_basis(L, U)
    r = len(comp)
    out = []
    # W/L is a (k - dim L)-subspace of U/L, which is spanned by the complement
    for S in enumerate_subspaces(r, q, k - L.dim):
        vecs = [
            tuple(sum(c * v[t] for c, v in zip(row, comp)) % q for t in range(n))
            for row in S.rows
        ]
        out.append(Subspace(q, n, rref(L.rows + tuple(vecs), n, q)))
    out.sort(key=lambda s: s.rows)
    return out
