"""Both sides of the defining relations of the web category, as linear combinations.

Relation ids: ASSOC, COASSOC, BIGON, SS1, SS2, SS1-SPECIAL, SS2-SPECIAL,
LOLLIPOP-A, LOLLIPOP-B, SLN-L, SLN-R.

Webs are written with a few helper tuples, ``("id", k)``, ``("merge", j, k)``,
``("split", j, k)``, ``("ncap",)`` and ``("ncup",)``.  Label-0 strands are
erased: a 0-strand disappears and a merge or split with a 0 part becomes an
identity.  Layers left with identities only are dropped.
"""

from __future__ import annotations

from typing import Iterator

from .coeffs import binomial, signed_binomial
from .webdsl import Id, LinComb, Merge, NCap, NCup, Split, Web

RELATION_IDS = (
    "ASSOC", "COASSOC", "BIGON", "SS1", "SS2", "SS1-SPECIAL", "SS2-SPECIAL",
    "LOLLIPOP-A", "LOLLIPOP-B", "SLN-L", "SLN-R",
)


class _Invalid(Exception):
    pass


def _item(n: int, spec: tuple) -> list:
    kind = spec[0]
    if kind == "id":
        k = spec[1]
        if k < 0 or k > n:
            raise _Invalid
        return [Id(k)] if k else []
    if kind in ("merge", "split"):
        j, k = spec[1], spec[2]
        if j < 0 or k < 0 or j + k > n:
            raise _Invalid
        if j == 0 or k == 0:
            return [Id(j + k)] if j + k else []
        return [Merge(j, k) if kind == "merge" else Split(j, k)]
    if kind == "ncap":
        return [NCap()]
    if kind == "ncup":
        return [NCup()]
    raise ValueError(f"unknown generator {kind!r}")


def build_web(n: int, dom, *layers) -> Web:
    """Web from helper tuples, with label-0 strands erased; raises _Invalid on bad labels."""
    dom = tuple(x for x in dom if x != 0)
    if any(x < 0 or x > n for x in dom):
        raise _Invalid
    out = []
    for layer in layers:
        gens = [g for spec in layer for g in _item(n, spec)]
        if gens and not all(isinstance(g, Id) for g in gens):
            out.append(tuple(gens))
    return Web(n, dom, tuple(out))


def _single(w: Web, coeff=1) -> LinComb:
    return LinComb.of(w, coeff)


def _ident(n: int, dom) -> Web:
    return build_web(n, dom)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _params(params: dict, *names) -> tuple:
    missing = [x for x in names if x not in params]
    if missing:
        raise ValueError(f"missing parameters {missing}")
    extra = sorted(set(params) - set(names))
    if extra:
        raise ValueError(f"unexpected parameters {extra}")
    vals = tuple(params[x] for x in names)
    for name, v in zip(names, vals):
        if not isinstance(v, int):
            raise ValueError(f"parameter {name} must be an integer")
    return vals


def ss1_sides(n: int, m: int, l: int, j: int, k: int) -> tuple[LinComb, LinComb]:
    """Rung k moves from the left strand to the right, then rung j moves back.

    The right side sums C(m - l + j - k, t) times the web with rungs j - t
    (leftwards, first) and k - t (rightwards); the binomial is the
    generalized one, so a negative upper index gives signed terms.
    """
    _require(min(m, l, j, k) >= 1, "SS1 needs m, l, j, k >= 1")
    _require(m <= n and l <= n, "SS1 strand labels must be at most n")
    _require(k <= m and l + k <= n, "SS1 first rung does not fit")
    _require(j <= l + k and 1 <= m - k + j <= n and l + k - j >= 1,
             "SS1 second rung does not fit")
    lhs = build_web(
        n, (m, l),
        [("split", m - k, k), ("id", l)],
        [("id", m - k), ("merge", k, l)],
        [("id", m - k), ("split", j, l + k - j)],
        [("merge", m - k, j), ("id", l + k - j)],
    )
    top = m - l + j - k
    terms = []
    for t in range(0, min(j, k) + 1):
        c = signed_binomial(top, t)
        if c == 0:
            continue
        try:
            w = build_web(
                n, (m, l),
                [("id", m), ("split", j - t, l - j + t)],
                [("merge", m, j - t), ("id", l - j + t)],
                [("split", m + j - k, k - t), ("id", l - j + t)],
                [("id", m + j - k), ("merge", k - t, l - j + t)],
            )
        except _Invalid:
            continue
        terms.append((c, w))
    return _single(lhs), LinComb(n, lhs.dom, lhs.cod, tuple(terms))


def ss2_sides(n: int, m: int, l: int, j: int, k: int) -> tuple[LinComb, LinComb]:
    """Rung k moves from the right strand to the left, then rung j moves back."""
    _require(min(m, l, j, k) >= 1, "SS2 needs m, l, j, k >= 1")
    _require(m <= n and l <= n, "SS2 strand labels must be at most n")
    _require(k <= l and m + k <= n, "SS2 first rung does not fit")
    _require(j <= m + k and 1 <= l - k + j <= n and m + k - j >= 1,
             "SS2 second rung does not fit")
    lhs = build_web(
        n, (m, l),
        [("id", m), ("split", k, l - k)],
        [("merge", m, k), ("id", l - k)],
        [("split", m + k - j, j), ("id", l - k)],
        [("id", m + k - j), ("merge", j, l - k)],
    )
    # mirror image of SS1, so the weighting is C(l - m + j - k, t)
    top = l - m + j - k
    terms = []
    for t in range(0, min(j, k) + 1):
        c = signed_binomial(top, t)
        if c == 0:
            continue
        try:
            w = build_web(
                n, (m, l),
                [("split", m - j + t, j - t), ("id", l)],
                [("id", m - j + t), ("merge", j - t, l)],
                [("id", m - j + t), ("split", k - t, l + j - k)],
                [("merge", m - j + t, k - t), ("id", l + j - k)],
            )
        except _Invalid:
            continue
        terms.append((c, w))
    return _single(lhs), LinComb(n, lhs.dom, lhs.cod, tuple(terms))


def relation_instance(rel_id: str, params: dict, n: int) -> tuple[LinComb, LinComb]:
    """Left and right side of one relation instance for ``Web`` at rank n."""
    if rel_id not in RELATION_IDS:
        raise ValueError(f"unknown relation {rel_id!r}")
    if n < 2:
        raise ValueError("n must be at least 2")
    try:
        return _instance(rel_id, dict(params), n)
    except _Invalid:
        raise ValueError(f"parameters {params} are not valid for {rel_id} at n={n}") from None


def _instance(rel_id: str, params: dict, n: int):
    if rel_id == "ASSOC":
        j, k, l = _params(params, "j", "k", "l")
        _require(min(j, k, l) >= 1 and j + k + l <= n, "ASSOC needs j, k, l >= 1 and j + k + l <= n")
        lhs = build_web(n, (j, k, l), [("merge", j, k), ("id", l)], [("merge", j + k, l)])
        rhs = build_web(n, (j, k, l), [("id", j), ("merge", k, l)], [("merge", j, k + l)])
        return _single(lhs), _single(rhs)
    if rel_id == "COASSOC":
        j, k, l = _params(params, "j", "k", "l")
        _require(min(j, k, l) >= 1 and j + k + l <= n, "COASSOC needs j, k, l >= 1 and j + k + l <= n")
        s = j + k + l
        lhs = build_web(n, (s,), [("split", j + k, l)], [("split", j, k), ("id", l)])
        rhs = build_web(n, (s,), [("split", j, k + l)], [("id", j), ("split", k, l)])
        return _single(lhs), _single(rhs)
    if rel_id == "BIGON":
        j, k = _params(params, "j", "k")
        _require(min(j, k) >= 1 and j + k <= n, "BIGON needs j, k >= 1 and j + k <= n")
        lhs = build_web(n, (j + k,), [("split", j, k)], [("merge", j, k)])
        return _single(lhs), _single(_ident(n, (j + k,)), binomial(j + k, j))
    if rel_id == "SS1":
        m, l, j, k = _params(params, "m", "l", "j", "k")
        return ss1_sides(n, m, l, j, k)
    if rel_id == "SS2":
        m, l, j, k = _params(params, "m", "l", "j", "k")
        return ss2_sides(n, m, l, j, k)
    if rel_id == "SS1-SPECIAL":
        (m,) = _params(params, "m")
        _require(1 <= m <= n - 1, "SS1-SPECIAL needs 1 <= m <= n - 1")
        lhs, _ = ss1_sides(n, m, 1, 1, 1)
        square = build_web(n, (m, 1), [("merge", m, 1)], [("split", m, 1)])
        rhs = LinComb(n, (m, 1), (m, 1), ((1, square), (m - 1, _ident(n, (m, 1)))))
        return lhs, rhs
    if rel_id == "SS2-SPECIAL":
        (m,) = _params(params, "m")
        _require(1 <= m <= n - 1, "SS2-SPECIAL needs 1 <= m <= n - 1")
        lhs, _ = ss2_sides(n, 1, m, 1, 1)
        square = build_web(n, (1, m), [("merge", 1, m)], [("split", 1, m)])
        rhs = LinComb(n, (1, m), (1, m), ((1, square), (m - 1, _ident(n, (1, m)))))
        return lhs, rhs
    if rel_id == "LOLLIPOP-A":
        _params(params)
        rhs = build_web(n, (n,), [("ncap",)], [("ncup",)])
        return _single(_ident(n, (n,))), _single(rhs)
    if rel_id == "LOLLIPOP-B":
        _params(params)
        lhs = build_web(n, (), [("ncup",)], [("ncap",)])
        return _single(lhs), _single(_ident(n, ()))
    if rel_id == "SLN-L":
        (m,) = _params(params, "m")
        _require(1 <= m <= n - 1, "SLN-L needs 1 <= m <= n - 1")
        rhs = build_web(
            n, (m,),
            [("id", m), ("ncup",)],
            [("id", m), ("split", n - m, m)],
            [("merge", m, n - m), ("id", m)],
            [("ncap",), ("id", m)],
        )
        return _single(_ident(n, (m,))), _single(rhs)
    if rel_id == "SLN-R":
        (m,) = _params(params, "m")
        _require(1 <= m <= n - 1, "SLN-R needs 1 <= m <= n - 1")
        rhs = build_web(
            n, (m,),
            [("ncup",), ("id", m)],
            [("split", m, n - m), ("id", m)],
            [("id", m), ("merge", n - m, m)],
            [("id", m), ("ncap",)],
        )
        return _single(_ident(n, (m,))), _single(rhs)
    raise AssertionError(rel_id)


def _ss_grid(n: int, name: str) -> Iterator[dict]:
    for m in range(1, n + 1):
        for l in range(1, n + 1):
            for k in range(1, n + 1):
                for j in range(1, n + 1):
                    params = {"m": m, "l": l, "j": j, "k": k}
                    try:
                        (ss1_sides if name == "SS1" else ss2_sides)(n, m, l, j, k)
                    except ValueError:
                        continue
                    yield params


def relation_grid(n: int, families: Iterator[str] = None) -> list[tuple[str, dict]]:
    """Every relation instance at rank n, in a fixed order."""
    wanted = set(RELATION_IDS if families is None else families)
    unknown = wanted - set(RELATION_IDS)
    if unknown:
        raise ValueError(f"unknown relations {sorted(unknown)}")
    out = []
    for rel in RELATION_IDS:
        if rel not in wanted:
            continue
        if rel in ("ASSOC", "COASSOC"):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    for l in range(1, n + 1):
                        if j + k + l <= n:
                            out.append((rel, {"j": j, "k": k, "l": l}))
        elif rel == "BIGON":
            for j in range(1, n):
                for k in range(1, n - j + 1):
                    out.append((rel, {"j": j, "k": k}))
        elif rel in ("SS1", "SS2"):
            out.extend((rel, p) for p in _ss_grid(n, rel))
        elif rel in ("SS1-SPECIAL", "SS2-SPECIAL", "SLN-L", "SLN-R"):
            out.extend((rel, {"m": m}) for m in range(1, n))
        else:
            out.append((rel, {}))
    return out
