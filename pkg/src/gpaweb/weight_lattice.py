"""The order-1 building: the sl_n weight lattice as a Cayley graph.

Vertices are integer vectors modulo the all-ones vector, stored with minimum
coordinate 0.  The generator attached to a proper nonempty subset A of
{1, ..., n} moves v to v + e_A, and that edge has label |A|.

Subsets are passed around as frozensets of 1-based indices, matching the usual
presentation of the degenerate triangle presentation T = T1 u T2.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from .coeffs import binomial, signed_binomial
from .graph_core import BuildingGraph

WLVertex = tuple[int, ...]
Subset = frozenset


def normalize(vec: Iterable[int]) -> WLVertex:
    vec = tuple(vec)
    lo = min(vec)
    return tuple(x - lo for x in vec)


def subsets_of_size(n: int, m: int) -> list[Subset]:
    return [frozenset(c) for c in combinations(range(1, n + 1), m)]


def proper_subsets(n: int) -> list[Subset]:
    return [A for m in range(1, n) for A in subsets_of_size(n, m)]


def indicator(n: int, A: Iterable[int]) -> tuple[int, ...]:
    A = set(A)
    return tuple(int(i + 1 in A) for i in range(n))


class WeightLattice(BuildingGraph):
    kind = "weight-lattice"

    def __init__(self, n: int):
        super().__init__(n, 1)

    def base_vertex(self) -> WLVertex:
        return (0,) * self.n

    def type_of(self, v: WLVertex) -> int:
        return (-sum(v)) % self.n

    def translate(self, v: WLVertex, A: Iterable[int]) -> WLVertex:
        return normalize(x + e for x, e in zip(v, indicator(self.n, A)))

    def _compute_neighbors(self, v, m):
        return [self.translate(v, A) for A in subsets_of_size(self.n, m)]

    def random_neighbor(self, v, m, rng):
        self.check_label(m)
        return self.translate(v, rng.sample(range(1, self.n + 1), m))

    def labelled_neighbors(self, v: WLVertex, m: int) -> list[tuple[WLVertex, Subset]]:
        self.check_label(m)
        return [(self.translate(v, A), A) for A in subsets_of_size(self.n, m)]

    def edge_subset(self, x: WLVertex, y: WLVertex) -> Optional[Subset]:
        """The subset A with y = x + e_A, or None if x and y are not adjacent."""
        d = normalize(b - a for a, b in zip(x, y))
        if any(c > 1 for c in d) or not any(d):
            return None
        return frozenset(i + 1 for i, c in enumerate(d) if c)

    def edge_label(self, x, y):
        A = self.edge_subset(x, y)
        return None if A is None else len(A)

    def split_vertices(self, a, c, j):
        self.check_label(j)
        if a == c:
            pool = subsets_of_size(self.n, j)
        else:
            A = self.edge_subset(a, c)
            if A is None or len(A) <= j:
                return []
            pool = [frozenset(B) for B in combinations(sorted(A), j)]
        return [self.translate(a, B) for B in pool]

    def vertex_json(self, v):
        return list(v)


# -- degenerate triangle presentation -------------------------------------------

def complement(n: int, A: Iterable[int]) -> Subset:
    return frozenset(range(1, n + 1)) - frozenset(A)


def _proper(n: int, A) -> bool:
    return 0 < len(A) < n and all(1 <= x <= n for x in A)


def in_T1(n: int, A, B, C) -> bool:
    """(A, B, C) pairwise disjoint proper nonempty subsets covering {1..n}."""
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    if not (_proper(n, A) and _proper(n, B) and _proper(n, C)):
        return False
    return not (A & B or B & C or A & C) and len(A | B | C) == n


def in_T2(n: int, A, B, C) -> bool:
    return in_T1(n, complement(n, C), complement(n, B), complement(n, A))


def in_T(n: int, A, B, C) -> bool:
    return in_T1(n, A, B, C) or in_T2(n, A, B, C)


def t1_size_test(n: int, A, B, C) -> bool:
    """For (A, B, C) in T, return whether |A| + |B| < n.

    That value always coincides with membership in T1; a disagreement raises.
    """
    if not in_T(n, A, B, C):
        raise ValueError(f"{(set(A), set(B), set(C))} is not in T")
    small = len(A) + len(B) < n
    if small != in_T1(n, A, B, C):
        raise AssertionError(f"size test and T1 membership disagree on {(A, B, C)}")
    return small


# -- subset-level square switch counts -----------------------------------------

def _disjoint_union(X, Y, Z) -> bool:
    """X and Y are disjoint and X | Y == Z."""
    return not (X & Y) and (X | Y) == Z


def ss1_labeling_counts(n: int, m: int, l: int, j: int, k: int, z, u, w, v):
    """Brute-force labeling counts for the first square switch relation.

    Boundary subsets: bottom left ``z`` (size m), bottom right ``u`` (size l),
    top left ``w`` (size m-k+j), top right ``v`` (size l+k-j).  Every subset of
    {1..n} (including the empty and the full set, which stand for absent and
    label-n strands) is tried for each internal strand.

    Returns ``(L, {t: R_t})`` where L counts labelings of the left side and R_t
    those of the right-side web with rungs j-t and k-t.
    """
    z, u, w, v = map(frozenset, (z, u, w, v))
    allsets = [frozenset(c) for r in range(n + 1) for c in combinations(range(1, n + 1), r)]
    by_size: dict[int, list] = {}
    for S in allsets:
        by_size.setdefault(len(S), []).append(S)

    # left side: z -> (p, r); r + u -> q; q -> (s, v); p + s -> w
    L = 0
    for p in by_size.get(m - k, []):
        for r in by_size.get(k, []):
            if not _disjoint_union(p, r, z):
                continue
            for q in by_size.get(l + k, []):
                if not _disjoint_union(r, u, q):
                    continue
                for s in by_size.get(j, []):
                    if _disjoint_union(s, v, q) and _disjoint_union(p, s, w):
                        L += 1

    # right side, rungs j-t (leftwards) then k-t (rightwards):
    # u -> (r', q'); z + r' -> p'; p' -> (w, s'); s' + q' -> v
    R = {}
    for t in range(0, min(j, k) + 1):
        cnt = 0
        for r2 in by_size.get(j - t, []):
            for q2 in by_size.get(l - j + t, []):
                if not _disjoint_union(r2, q2, u):
                    continue
                for p2 in by_size.get(m + j - t, []):
                    if not _disjoint_union(z, r2, p2):
                        continue
                    for s2 in by_size.get(k - t, []):
                        if _disjoint_union(w, s2, p2) and _disjoint_union(s2, q2, v):
                            cnt += 1
        R[t] = cnt
    return L, R


def ss1_formula_counts(n: int, m: int, l: int, j: int, k: int, z, u, w, v):
    """Closed-form counts from the subset argument for the first square switch.

    With i = m - |z & w|:  L = C(|(z & w) - u|, k - i) and
    R_t = C(|u - (z | w)|, k - i - t), weighted by C(m - l + j - k, t).
    """
    z, u, w, v = map(frozenset, (z, u, w, v))
    i = m - len(z & w)
    L = binomial(len((z & w) - u), k - i)
    R = {t: binomial(len(u - (z | w)), k - i - t) for t in range(0, min(j, k) + 1)}
    return L, R


def ss1_weighted_rhs(m: int, l: int, j: int, k: int, R: dict) -> int:
    top = m - l + j - k
    return sum(signed_binomial(top, t) * c for t, c in R.items())
