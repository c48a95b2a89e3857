"""Bruhat-Tits building of SL_n over the q-adic numbers, q prime.

A vertex is a homothety class of Z_q-lattices in Q_q^n.  Each class is stored
by the row Hermite normal form of its representative L with
L <= Z_q^n and L not inside q Z_q^n: an upper triangular integer matrix whose
rows span L, with diagonal entries q^{a_j} and entry (i, j), i < j, reduced
into [0, q^{a_j}).

All lattices handled here contain q^E Z_q^n for a known E, so their Hermite
forms are computed modulo q^E and every entry stays an exact integer below
q^E.  ``precision`` caps E; asking for more raises :class:`PrecisionError`.

Edge convention: for an m-dimensional subspace S of L/qL, the preimage L' of
S (so qL <= L' <= L) is a neighbour of L, and the edge L -> L' has label m.
With type = v_q(det) mod n this is type(L) - type(L') mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .coeffs import is_prime
from .graph_core import BuildingGraph, PrecisionError
from .projgeom import Subspace, canonicalize, enumerate_between, enumerate_subspaces, zero_space


def vq(x, q: int) -> Optional[int]:
    """q-adic valuation of an int or Fraction; None for zero."""
    if x == 0:
        return None
    if isinstance(x, Fraction):
        return vq(x.numerator, q) - vq(x.denominator, q)
    x = abs(x)
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v


@dataclass(frozen=True)
class LatticeClass:
    n: int
    q: int
    rows: tuple[tuple[int, ...], ...]

    @cached_property
    def diag(self) -> tuple[int, ...]:
        return tuple(vq(self.rows[j][j], self.q) for j in range(self.n))

    @property
    def det_valuation(self) -> int:
        return sum(self.diag)

    @property
    def type(self) -> int:
        return self.det_valuation % self.n

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _upper_inverse(self.rows)

    @cached_property
    def exponent(self) -> int:
        """Least e with q^e Z_q^n inside the lattice (largest elementary divisor)."""
        vals = [vq(x, self.q) for row in self.inverse for x in row if x]
        return max(0, -min(vals))

    @cached_property
    def scaled_inverse(self) -> tuple[tuple[int, ...], ...]:
        """The integer matrix q^exponent * H^{-1}."""
        s = self.q ** self.exponent
        return tuple(tuple(int(x * s) for x in row) for row in self.inverse)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "diag": list(self.diag),
            "offdiag": [list(self.rows[i][i + 1:]) for i in range(self.n - 1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LatticeClass":
        n, q = data["n"], data["q"]
        rows = []
        for i in range(n):
            row = [0] * n
            row[i] = q ** data["diag"][i]
            if i < n - 1:
                row[i + 1:] = data["offdiag"][i]
            rows.append(tuple(row))
        return cls(n, q, tuple(rows))


def _upper_inverse(rows) -> tuple[tuple[Fraction, ...], ...]:
    n = len(rows)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for col in range(n):
        # solve H x = e_col by back substitution
        for i in range(n - 1, -1, -1):
            s = Fraction(int(i == col))
            for j in range(i + 1, n):
                s -= rows[i][j] * inv[j][col]
            inv[i][col] = s / rows[i][i]
    return tuple(tuple(r) for r in inv)


def hermite_mod(gens, n: int, q: int, E: int) -> tuple[tuple[int, ...], ...]:
    """Row Hermite form of span_{Z_q}(gens) + q^E Z_q^n."""
    mod = q ** E
    pending = [[x % mod for x in g] for g in gens]
    pivots = []
    for j in range(n):
        best, bv = None, E
        for idx, r in enumerate(pending):
            if r[j]:
                v = vq(r[j], q)
                if v < bv:
                    best, bv = idx, v
        if best is None:
            piv = [0] * n
            piv[j] = mod
            pivots.append(piv)
            continue
        r = pending.pop(best)
        unit = r[j] // q ** bv
        inv = pow(unit, -1, mod)
        r = [x * inv % mod for x in r]
        qv = q ** bv
        rest = []
        for s in pending:
            if s[j]:
                t = s[j] // qv
                s = [(a - t * b) % mod for a, b in zip(s, r)]
            if any(s):
                rest.append(s)
        # multiples of r killed at column j are still lattice vectors
        ann = [x * q ** (E - bv) % mod for x in r]
        if any(ann):
            rest.append(ann)
        pending = rest
        pivots.append(r)
    # reduce above the diagonal, column by column
    for j in range(n):
        d = pivots[j][j]
        for i in range(j):
            t = pivots[i][j] // d
            if t:
                pivots[i] = [a - t * b for a, b in zip(pivots[i], pivots[j])]
    return tuple(tuple(r) for r in pivots)


def remove_homothety(rows, q: int) -> tuple[tuple[int, ...], ...]:
    vals = [vq(x, q) for r in rows for x in r if x]
    s = min(vals)
    if s == 0:
        return tuple(rows)
    d = q ** s
    return tuple(tuple(x // d for x in r) for r in rows)


def smith_valuations(mat, q: int) -> list[int]:
    """Valuations of the invariant factors of a nonsingular integer matrix over Z_(q).

    Elimination multiplies rows by units of Z_(q) only, so entries stay integral.
    """
    A = [list(row) for row in mat]
    n = len(A)
    out = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if A[i][j]:
                    v = vq(A[i][j], q)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise ValueError("singular matrix")
        v, i, j = best
        A[k], A[i] = A[i], A[k]
        for row in A:
            row[k], row[j] = row[j], row[k]
        qv = q ** v
        unit = A[k][k] // qv
        for i in range(k + 1, n):
            if A[i][k]:
                f = A[i][k] // qv
                A[i] = [unit * a - f * b for a, b in zip(A[i], A[k])]
        out.append(v)
    return sorted(out)


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


class BruhatTitsBuilding(BuildingGraph):
    kind = "bruhat-tits"

    def __init__(self, n: int, q: int, precision: int = 8):
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        super().__init__(n, q)
        self.precision = precision
        self._residue: dict = {}
        self._preimage: dict = {}
        self._labels: dict = {}
        self._subspaces = {m: enumerate_subspaces(n, q, m) for m in range(1, n)}

    def standard_vertex(self) -> LatticeClass:
        n = self.n
        return LatticeClass(n, self.q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    base_vertex = standard_vertex

    def type_of(self, v: LatticeClass) -> int:
        return v.type

    def canonical(self, gens, E: int) -> LatticeClass:
        if E > self.precision:
            raise PrecisionError(
                f"needs valuations up to {E} but the precision is {self.precision}", required=E)
        rows = remove_homothety(hermite_mod(gens, self.n, self.q, E), self.q)
        return LatticeClass(self.n, self.q, rows)

    def preimage(self, v: LatticeClass, S: Subspace) -> LatticeClass:
        """Class of the lattice {x in L : x mod qL lies in S}, S in basis coordinates."""
        key = (v, S)
        got = self._preimage.get(key)
        if got is not None:
            return got
        q, n = self.q, self.n
        B = v.rows
        gens = [[sum(c * B[i][t] for i, c in enumerate(s)) for t in range(n)] for s in S.rows]
        gens += [[q * x for x in row] for row in B]
        w = self.canonical(gens, v.exponent + 1)
        self._residue.setdefault((v, w), S)
        return self._preimage.setdefault(key, w)

    def _compute_neighbors(self, v, m):
        return [self.preimage(v, S) for S in self._subspaces[m]]

    def random_neighbor(self, v, m, rng):
        # uniform over residue subspaces, without expanding the whole link
        self.check_label(m)
        return self.preimage(v, rng.choice(self._subspaces[m]))

    def relative_coordinates(self, x: LatticeClass, y: LatticeClass):
        """Rows of y in the basis of x, scaled by q^exponent(x) to be integral."""
        return _matmul(y.rows, x.scaled_inverse)

    def relative_divisors(self, x: LatticeClass, y: LatticeClass) -> list[int]:
        """Elementary divisor valuations of y relative to x, shifted to minimum 0."""
        vals = smith_valuations(self.relative_coordinates(x, y), self.q)
        lo = vals[0]
        return [v - lo for v in vals]

    def edge_label(self, x, y):
        key = (x, y)
        if key in self._labels:
            return self._labels[key]
        divs = self.relative_divisors(x, y)
        lab = (x.type - y.type) % self.n if set(divs) == {0, 1} else None
        return self._labels.setdefault(key, lab)

    def has_edge(self, x, y, m):
        return self.edge_label(x, y) == m

    def residue_subspace(self, v: LatticeClass, x: LatticeClass) -> Subspace:
        """Subspace of L_v / q L_v cut out by the class x, which must be adjacent to v."""
        got = self._residue.get((v, x))
        if got is not None:
            return got
        if self.edge_label(v, x) is None:
            raise ValueError("vertex is not adjacent to the link centre")
        q = self.q
        C = self.relative_coordinates(v, x)
        d = q ** min(vq(c, q) for row in C for c in row if c)
        vecs = [[c // d % q for c in row] for row in C]
        S = canonicalize(vecs, self.n, q)
        return self._residue.setdefault((v, x), S)

    def link_incidence(self, v, x, y) -> bool:
        """Whether v -> x -> y -> v is a cycle, read off the residue subspaces at v."""
        Sx = self.residue_subspace(v, x)
        Sy = self.residue_subspace(v, y)
        if Sx == Sy:
            return False
        return Sx.contains(Sy) or Sy.contains(Sx)

    def split_vertices(self, a, c, j):
        self.check_label(j)
        if a == c:
            return list(self.neighbors(a, j))
        if self.edge_label(a, c) is None:
            return []
        Sc = self.residue_subspace(a, c)
        if Sc.dim <= j:
            return []
        return [self.preimage(a, S) for S in enumerate_between(zero_space(self.n, self.q), Sc, j)]

    def vertex_json(self, v):
        return v.to_json()

    def vertex_str(self, v):
        return f"diag={list(v.diag)} rows={[list(r) for r in v.rows]}"
