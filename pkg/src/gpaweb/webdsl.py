"""Webs as data: generators, layered diagrams, linear combinations and a small text format.

A web is stored sliced into layers.  Each layer is a left-to-right row of
generators whose input labels concatenate to the object below it.  Strand
labels run over ``1..n``; label ``n`` is allowed and evaluates as an empty step.

Text format::

    web n=3 dom=[1,1] {     # comment
      [merge(1,1)]
      [split(1,1)]
    }
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .coeffs import Field

Obj = tuple[int, ...]


class WebSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.pos = pos
        self.line = line
        self.column = col


class WebValidationError(ValueError):
    pass


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class Merge:
    j: int
    k: int

    def inputs(self, n: int) -> Obj:
        return (self.j, self.k)

    def outputs(self, n: int) -> Obj:
        return (self.j + self.k,)

    def validate(self, n: int):
        if self.j < 1 or self.k < 1 or self.j + self.k > n:
            raise WebValidationError(f"merge({self.j},{self.k}) needs j, k >= 1 and j + k <= {n}")

    def text(self) -> str:
        return f"merge({self.j},{self.k})"


@dataclass(frozen=True)
class Split:
    j: int
    k: int

    def inputs(self, n: int) -> Obj:
        return (self.j + self.k,)

    def outputs(self, n: int) -> Obj:
        return (self.j, self.k)

    def validate(self, n: int):
        if self.j < 1 or self.k < 1 or self.j + self.k > n:
            raise WebValidationError(f"split({self.j},{self.k}) needs j, k >= 1 and j + k <= {n}")

    def text(self) -> str:
        return f"split({self.j},{self.k})"


@dataclass(frozen=True)
class NCap:
    def inputs(self, n: int) -> Obj:
        return (n,)

    def outputs(self, n: int) -> Obj:
        return ()

    def validate(self, n: int):
        pass

    def text(self) -> str:
        return "ncap"


@dataclass(frozen=True)
class NCup:
    def inputs(self, n: int) -> Obj:
        return ()

    def outputs(self, n: int) -> Obj:
        return (n,)

    def validate(self, n: int):
        pass

    def text(self) -> str:
        return "ncup"


@dataclass(frozen=True)
class Id:
    k: int

    def inputs(self, n: int) -> Obj:
        return (self.k,)

    def outputs(self, n: int) -> Obj:
        return (self.k,)

    def validate(self, n: int):
        if not 1 <= self.k <= n:
            raise WebValidationError(f"id({self.k}) label outside [1, {n}]")

    def text(self) -> str:
        return f"id({self.k})"


Generator = Union[Merge, Split, NCap, NCup, Id]
Layer = tuple[Generator, ...]


def layer_inputs(layer: Sequence[Generator], n: int) -> Obj:
    return tuple(x for g in layer for x in g.inputs(n))


def layer_outputs(layer: Sequence[Generator], n: int) -> Obj:
    return tuple(x for g in layer for x in g.outputs(n))


def identity_layer(obj: Iterable[int]) -> Layer:
    return tuple(Id(k) for k in obj)


# -- webs -------------------------------------------------------------------------

@dataclass(frozen=True)
class Web:
    n: int
    dom: Obj
    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "layers", tuple(tuple(l) for l in self.layers))
        if self.n < 2:
            raise WebValidationError("n must be at least 2")
        for x in self.dom:
            if not 1 <= x <= self.n:
                raise WebValidationError(f"domain label {x} outside [1, {self.n}]")
        cur = self.dom
        for i, layer in enumerate(self.layers):
            if not layer:
                raise WebValidationError(f"layer {i} is empty")
            try:
                for g in layer:
                    g.validate(self.n)
            except WebValidationError as e:
                raise WebValidationError(f"layer {i}: {e}") from None
            ins = layer_inputs(layer, self.n)
            if ins != cur:
                raise WebValidationError(
                    f"layer {i} expects input {list(ins)} but receives {list(cur)}")
            cur = layer_outputs(layer, self.n)
        object.__setattr__(self, "_cod", cur)

    @property
    def cod(self) -> Obj:
        return self._cod

    def objects(self) -> list[Obj]:
        """The object below each layer, then the codomain."""
        out = [self.dom]
        for layer in self.layers:
            out.append(layer_outputs(layer, self.n))
        return out

    def generator_count(self) -> int:
        return sum(1 for layer in self.layers for g in layer if not isinstance(g, Id))

    def text(self) -> str:
        return format_web(self)

    def __str__(self):
        return self.text()


def identity(n: int, obj: Iterable[int]) -> Web:
    return Web(n, tuple(obj), ())


def generator_web(n: int, gen: Generator) -> Web:
    return Web(n, gen.inputs(n), ((gen,),))


def compose(f: Web, g: Web) -> Web:
    """f followed by g (g drawn on top of f)."""
    if f.n != g.n:
        raise ValueError(f"cannot compose webs for n={f.n} and n={g.n}")
    if f.cod != g.dom:
        raise ValueError(f"codomain {list(f.cod)} does not match domain {list(g.dom)}")
    return Web(f.n, f.dom, f.layers + g.layers)


def tensor(a: Web, b: Web) -> Web:
    """Side by side, a on the left; the shorter web is padded with identity layers."""
    if a.n != b.n:
        raise ValueError(f"cannot tensor webs for n={a.n} and n={b.n}")
    oa, ob = a.objects(), b.objects()
    layers = []
    for i in range(max(len(a.layers), len(b.layers))):
        left = a.layers[i] if i < len(a.layers) else identity_layer(oa[-1])
        right = b.layers[i] if i < len(b.layers) else identity_layer(ob[-1])
        layers.append(left + right)
    return Web(a.n, a.dom + b.dom, tuple(layers))


# -- text format ----------------------------------------------------------------

def format_web(w: Web) -> str:
    dom = ",".join(map(str, w.dom))
    body = " ".join("[" + ", ".join(g.text() for g in layer) + "]" for layer in w.layers)
    return f"web n={w.n} dom=[{dom}] {{ {body} }}" if body else f"web n={w.n} dom=[{dom}] {{ }}"


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<tok>[A-Za-z_]+|\d+|[\[\]{}(),=])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WebSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        if m.group("tok"):
            toks.append((m.group("tok"), pos))
        pos = m.end()
    toks.append(("", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def error(self, msg: str):
        raise WebSyntaxError(msg, self.toks[self.i][1], self.text)

    def take(self, expected: str = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            self.error(f"expected {expected!r}, found {tok or 'end of input'!r}")
        if not tok:
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.peek()
        if not tok.isdigit():
            self.error(f"expected an integer, found {tok or 'end of input'!r}")
        self.i += 1
        return int(tok)

    def int_list(self) -> list[int]:
        self.take("[")
        out = []
        if self.peek() != "]":
            out.append(self.integer())
            while self.peek() == ",":
                self.take(",")
                out.append(self.integer())
        self.take("]")
        return out

    def item(self) -> Generator:
        name = self.peek()
        if name in ("ncap", "ncup"):
            self.take()
            return NCap() if name == "ncap" else NCup()
        if name == "id":
            self.take()
            self.take("(")
            k = self.integer()
            self.take(")")
            return Id(k)
        if name in ("merge", "split"):
            self.take()
            self.take("(")
            j = self.integer()
            self.take(",")
            k = self.integer()
            self.take(")")
            return Merge(j, k) if name == "merge" else Split(j, k)
        self.error(f"unknown generator {name or 'end of input'!r}")

    def web(self) -> Web:
        self.take("web")
        self.take("n")
        self.take("=")
        n = self.integer()
        self.take("dom")
        self.take("=")
        dom = self.int_list()
        self.take("{")
        layers = []
        while self.peek() == "[":
            self.take("[")
            layer = [self.item()]
            while self.peek() == ",":
                self.take(",")
                layer.append(self.item())
            self.take("]")
            layers.append(tuple(layer))
        self.take("}")
        if self.peek():
            self.error("trailing input after web")
        return Web(n, tuple(dom), tuple(layers))


def parse(text: str) -> Web:
    return _Parser(text).web()


# -- linear combinations -----------------------------------------------------------

@dataclass(frozen=True)
class LinComb:
    """Formal sum of webs sharing domain and codomain.  Coefficients are integers or
    fractions; they are mapped into the coefficient field only at evaluation time."""

    n: int
    dom: Obj
    cod: Obj
    terms: tuple[tuple[Union[int, Fraction], Web], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "terms", tuple(self.terms))
        for c, w in self.terms:
            if (w.n, w.dom, w.cod) != (self.n, self.dom, self.cod):
                raise ValueError(
                    f"term {w.text()} does not have type {list(self.dom)} -> {list(self.cod)}")

    @classmethod
    def of(cls, w: Web, coeff=1) -> "LinComb":
        return cls(w.n, w.dom, w.cod, ((coeff, w),))

    @classmethod
    def zero(cls, n: int, dom, cod) -> "LinComb":
        return cls(n, tuple(dom), tuple(cod), ())

    def __add__(self, other: "LinComb") -> "LinComb":
        if (self.n, self.dom, self.cod) != (other.n, other.dom, other.cod):
            raise ValueError("cannot add linear combinations of different types")
        return LinComb(self.n, self.dom, self.cod, self.terms + other.terms)

    def scale(self, c) -> "LinComb":
        return LinComb(self.n, self.dom, self.cod, tuple((c * a, w) for a, w in self.terms))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def to_json(self, field: Field) -> dict:
        return {
            "field": str(field),
            "terms": [{"coeff": field.to_json(c), "web": w.text()} for c, w in self.terms],
        }

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*({w.text()})" for c, w in self.terms)
