import random

from gpaweb.graph_core import enumerate_paths
from gpaweb.webdsl import Id, Merge, NCap, NCup, Split, Web


def random_layer(n: int, obj: tuple, rng: random.Random) -> tuple:
    """One layer acting on ``obj`` with a few non-identity generators."""
    layer = []
    i = 0
    while i < len(obj):
        x = obj[i]
        roll = rng.random()
        if roll < 0.25 and i + 1 < len(obj) and x + obj[i + 1] <= n:
            layer.append(Merge(x, obj[i + 1]))
            i += 2
            continue
        if roll < 0.5 and x >= 2:
            j = rng.randint(1, x - 1)
            layer.append(Split(j, x - j))
        elif roll < 0.6 and x == n:
            layer.append(NCap())
        else:
            layer.append(Id(x))
        i += 1
        if rng.random() < 0.1:
            layer.append(NCup())
    if not layer or rng.random() < 0.1:
        layer.insert(rng.randint(0, len(layer)), NCup())
    return tuple(layer)


def random_object(n: int, rng: random.Random, max_len: int = 3) -> tuple:
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


def random_web(n: int, rng: random.Random, dom=None, depth: int = 3, max_width: int = 4) -> Web:
    dom = random_object(n, rng) if dom is None else tuple(dom)
    layers = []
    cur = dom
    for _ in range(rng.randint(1, depth)):
        for _ in range(20):
            layer = random_layer(n, cur, rng)
            w = Web(n, cur, (layer,))
            if len(w.cod) <= max_width:
                break
        else:
            break
        layers.append(layer)
        cur = w.cod
    return Web(n, dom, tuple(layers))


def _generator_holds(g, gen, ins: tuple, outs: tuple) -> bool:
    """Local 0/1 value of one generator, checked straight from edge labels."""
    n = g.n
    if ins[0] != outs[0] or ins[-1] != outs[-1]:
        return False
    if isinstance(gen, Id):
        return ins == outs
    if isinstance(gen, Merge):
        a, c = ins[0], ins[2]
        if gen.j + gen.k == n:
            return a == c
        return g.edge_label(a, c) == gen.j + gen.k
    if isinstance(gen, Split):
        a, c = ins[0], ins[1]
        if gen.j + gen.k == n:
            return a == c
        return g.edge_label(a, c) == gen.j + gen.k
    if isinstance(gen, (NCap, NCup)):
        return True
    raise TypeError(gen)


def _layer_holds(g, layer, ins: tuple, outs: tuple) -> bool:
    pi = po = 0
    for gen in layer:
        wi, wo = len(gen.inputs(g.n)), len(gen.outputs(g.n))
        if not _generator_holds(g, gen, ins[pi:pi + wi + 1], outs[po:po + wo + 1]):
            return False
        pi += wi
        po += wo
    return True


def brute_force_value(g, web: Web, p1_vertices: tuple, p2_vertices: tuple) -> int:
    """Integer count of labelings: every intermediate object gets a path from the same start."""
    start = p1_vertices[0]
    objs = web.objects()
    candidates = [[p1_vertices]]
    for obj in objs[1:-1]:
        candidates.append([p.vertices for p in enumerate_paths(g, start, obj)])
    candidates.append([p2_vertices])
    counts = {p1_vertices: 1}
    for layer, nxt in zip(web.layers, candidates[1:]):
        new = {}
        for ins, c in counts.items():
            for outs in nxt:
                if _layer_holds(g, layer, ins, outs):
                    new[outs] = new.get(outs, 0) + c
        counts = new
    if not web.layers:
        return int(p1_vertices == p2_vertices)
    return counts.get(p2_vertices, 0)
