import random
from itertools import product

import pytest

from gpaweb.coeffs import gaussian_binomial
from gpaweb.projgeom import (
    Subspace, canonicalize, enumerate_between, enumerate_subspaces, full_space, join, meet,
    nullspace, rref, zero_space,
)


def _span(vectors, n, q):
    """Set of all vectors in the span, by listing every linear combination."""
    vectors = list(vectors)
    out = set()
    for coeffs in product(range(q), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % q for i in range(n)))
    return frozenset(out)


def _random_vectors(n, q, k, rng):
    return [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]


def test_rref_is_idempotent_and_spans_same_space():
    rng = random.Random(1)
    for _ in range(200):
        q = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        vecs = _random_vectors(n, q, rng.randint(0, 5), rng)
        R = rref(vecs, n, q)
        assert rref(R, n, q) == R
        assert _span(R, n, q) == _span(vecs, n, q)


def test_canonical_form_depends_only_on_span():
    rng = random.Random(2)
    for _ in range(200):
        q = rng.choice([2, 3])
        n = 3
        a = _random_vectors(n, q, 3, rng)
        b = _random_vectors(n, q, 3, rng)
        same = _span(a, n, q) == _span(b, n, q)
        assert (canonicalize(a, n, q) == canonicalize(b, n, q)) == same


def test_nullspace_is_orthogonal_complement():
    rng = random.Random(3)
    for _ in range(100):
        q = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        rows = _random_vectors(n, q, rng.randint(0, 3), rng)
        N = nullspace(rows, n, q)
        r = len(rref(rows, n, q))
        assert len(N) == n - r
        for v in N:
            for w in rows:
                assert sum(x * y for x, y in zip(v, w)) % q == 0


@pytest.mark.parametrize("q", [2, 3])
def test_enumeration_matches_distinct_spans(q):
    n = 3
    vecs = list(product(range(q), repeat=n))
    for k in range(n + 1):
        spans = {_span(c, n, q) for c in product(vecs, repeat=k)}
        spans = {s for s in spans if len(s) == q ** k}
        got = enumerate_subspaces(n, q, k)
        assert len(got) == len(spans)
        assert {_span(S.rows, n, q) for S in got} == spans


@pytest.mark.parametrize("q", [2, 3, 5])
def test_enumeration_counts(q):
    for n in range(1, 5):
        for k in range(n + 1):
            subs = enumerate_subspaces(n, q, k)
            assert len(subs) == gaussian_binomial(n, k, q)
            assert len(set(subs)) == len(subs)
            assert all(S.dim == k for S in subs)


def test_join_and_meet_dimensions():
    rng = random.Random(4)
    n, q = 4, 3
    for _ in range(150):
        U = canonicalize(_random_vectors(n, q, rng.randint(0, 3), rng), n, q)
        V = canonicalize(_random_vectors(n, q, rng.randint(0, 3), rng), n, q)
        J, M = join(U, V), meet(U, V)
        assert J.dim + M.dim == U.dim + V.dim
        assert _span(M.rows, n, q) == _span(U.rows, n, q) & _span(V.rows, n, q)
        assert J.contains(U) and J.contains(V)


def test_membership():
    U = canonicalize([(1, 1, 0)], 3, 2)
    assert (1, 1, 0) in U
    assert (0, 0, 0) in U
    assert (1, 0, 0) not in U


def test_enumerate_between():
    n, q = 4, 2
    L = canonicalize([(1, 0, 0, 0)], n, q)
    U = canonicalize([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], n, q)
    mids = enumerate_between(L, U, 2)
    assert len(mids) == gaussian_binomial(2, 1, q)
    for W in mids:
        assert W.contains(L) and U.contains(W)
    assert enumerate_between(L, U, 0) == []
    with pytest.raises(ValueError):
        enumerate_between(U, L, 2)


def test_json_round_trip():
    U = canonicalize([(2, 1, 0), (0, 1, 1)], 3, 3)
    assert Subspace.from_json(U.to_json()) == U


def test_bad_inputs():
    with pytest.raises(ValueError):
        canonicalize([(1, 0)], 3, 2)
    with pytest.raises(ValueError):
        enumerate_subspaces(3, 4, 1)
    with pytest.raises(ValueError):
        join(zero_space(2, 2), full_space(3, 2))
