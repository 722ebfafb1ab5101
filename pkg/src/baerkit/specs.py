"""Constructor-expression grammar for rings and morphisms.

The grammar is s-expression flavored and round-trips through serialize():

    zmod 6
    field 2 2
    product (zmod 2) (zmod 3)
    matrix 2 (zmod 2)
    upper_triangular 2 (zmod 3)
    skew_triangular T 2 (field 2 2) frobenius
    quotient (zmod 8) [4]

Morphism specs (for sigma, alpha): identity | frobenius | swap |
entrywise SPEC | table [v0 v1 ...].  Derivation specs (for delta):
zero | inner ELEM | table [v0 v1 ...].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ring import FiniteRing, StructuralError
from . import construct, maps


class SpecError(ValueError):
    """Parse or validation failure, with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Token:
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()[]":
            out.append(Token(ch, i))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()[]":
            j += 1
        out.append(Token(text[i:j], i))
        i = j
    return out


class _Stream:
    def __init__(self, tokens: list[Token], length: int):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, what: str) -> Token:
        t = self.peek()
        if t is None:
            raise SpecError(f"expected {what}, found end of input", self.length)
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next(repr(text))
        if t.text != text:
            raise SpecError(f"expected {text!r}, found {t.text!r}", t.pos)
        return t

    def int_(self, what: str) -> int:
        t = self.next(what)
        try:
            return int(t.text)
        except ValueError:
            raise SpecError(f"expected {what} (an integer), found {t.text!r}", t.pos) from None


# expression trees are plain tuples: ("zmod", 6), ("product", t1, t2), ...

_RING_HEADS = {
    "zmod": 1, "field": 2, "product": 2, "matrix": 2,
    "upper_triangular": 2, "skew_triangular": 4, "quotient": 2,
}
_MORPHISM_HEADS = {"identity": 0, "frobenius": 0, "swap": 0, "entrywise": 1, "table": 1}
_DERIVATION_HEADS = {"zero": 0, "inner": 1, "table": 1}


def _parse_ring(s: _Stream) -> tuple:
    t = s.peek()
    if t is not None and t.text == "(":
        s.next("(")
        inner = _parse_ring(s)
        s.expect(")")
        return inner
    head = s.next("a constructor name")
    if head.text not in _RING_HEADS:
        raise SpecError(f"unknown constructor {head.text!r}", head.pos)
    name = head.text
    if name == "zmod":
        return ("zmod", s.int_("modulus"))
    if name == "field":
        return ("field", s.int_("characteristic"), s.int_("extension degree"))
    if name == "product":
        return ("product", _parse_ring(s), _parse_ring(s))
    if name in ("matrix", "upper_triangular"):
        return (name, s.int_("size"), _parse_ring(s))
    if name == "skew_triangular":
        fam = s.next("a family tag")
        if fam.text not in ("full", "S", "T", "A", "B"):
            raise SpecError(f"unknown family {fam.text!r}", fam.pos)
        n = s.int_("size")
        base = _parse_ring(s)
        sigma = _parse_morphism(s)
        return ("skew_triangular", fam.text, n, base, sigma)
    if name == "quotient":
        base = _parse_ring(s)
        gens = _parse_int_list(s)
        return ("quotient", base, tuple(gens))
    raise AssertionError(name)


def _parse_int_list(s: _Stream) -> list[int]:
    s.expect("[")
    out = []
    while True:
        t = s.peek()
        if t is None:
            raise SpecError("unterminated list", s.length)
        if t.text == "]":
            s.next("]")
            return out
        out.append(s.int_("a list entry"))


def _parse_morphism(s: _Stream) -> tuple:
    t = s.peek()
    if t is not None and t.text == "(":
        s.next("(")
        inner = _parse_morphism(s)
        s.expect(")")
        return inner
    head = s.next("a morphism name")
    if head.text not in _MORPHISM_HEADS:
        raise SpecError(f"unknown morphism {head.text!r}", head.pos)
    if head.text == "table":
        return ("table", tuple(_parse_int_list(s)))
    if head.text == "entrywise":
        return ("entrywise", _parse_morphism(s))
    return (head.text,)


def _parse_derivation(s: _Stream) -> tuple:
    t = s.peek()
    if t is not None and t.text == "(":
        s.next("(")
        inner = _parse_derivation(s)
        s.expect(")")
        return inner
    head = s.next("a derivation name")
    if head.text not in _DERIVATION_HEADS:
        raise SpecError(f"unknown derivation {head.text!r}", head.pos)
    if head.text == "zero":
        return ("zero",)
    if head.text == "inner":
        return ("inner", s.int_("an element id"))
    return ("table", tuple(_parse_int_list(s)))


@dataclass(frozen=True)
class RingSpec:
    expr: tuple

    def serialize(self) -> str:
        return _serialize(self.expr)


def parse_spec(text: str) -> RingSpec:
    tokens = _tokenize(text)
    if not tokens:
        raise SpecError("empty spec", 0)
    s = _Stream(tokens, len(text))
    expr = _parse_ring(s)
    left = s.peek()
    if left is not None:
        raise SpecError(f"trailing input {left.text!r}", left.pos)
    return RingSpec(expr)


def parse_morphism_spec(text: str) -> tuple:
    tokens = _tokenize(text)
    s = _Stream(tokens, len(text))
    expr = _parse_morphism(s)
    left = s.peek()
    if left is not None:
        raise SpecError(f"trailing input {left.text!r}", left.pos)
    return expr


def parse_derivation_spec(text: str) -> tuple:
    tokens = _tokenize(text)
    s = _Stream(tokens, len(text))
    expr = _parse_derivation(s)
    left = s.peek()
    if left is not None:
        raise SpecError(f"trailing input {left.text!r}", left.pos)
    return expr


def _serialize(expr: tuple) -> str:
    head = expr[0]
    if head == "zmod":
        return f"zmod {expr[1]}"
    if head == "field":
        return f"field {expr[1]} {expr[2]}"
    if head == "product":
        return f"product ({_serialize(expr[1])}) ({_serialize(expr[2])})"
    if head in ("matrix", "upper_triangular"):
        return f"{head} {expr[1]} ({_serialize(expr[2])})"
    if head == "skew_triangular":
        return (f"skew_triangular {expr[1]} {expr[2]} "
                f"({_serialize(expr[3])}) ({_serialize(expr[4])})")
    if head == "quotient":
        gens = " ".join(str(g) for g in expr[2])
        return f"quotient ({_serialize(expr[1])}) [{gens}]"
    if head in ("identity", "frobenius", "swap", "zero"):
        return head
    if head == "inner":
        return f"inner {expr[1]}"
    if head == "entrywise":
        return f"entrywise ({_serialize(expr[1])})"
    if head == "table":
        return "table [" + " ".join(str(v) for v in expr[1]) + "]"
    raise StructuralError(f"unserializable node {head!r}")


def serialize(spec: RingSpec) -> str:
    return spec.serialize()


# ---------------------------------------------------------------------------
# building


def build_ring(spec: RingSpec | tuple, order_cap: int = construct.DEFAULT_ORDER_CAP) -> FiniteRing:
    expr = spec.expr if isinstance(spec, RingSpec) else spec
    return _build(expr, order_cap)


def _build(expr: tuple, cap: int) -> FiniteRing:
    head = expr[0]
    if head == "zmod":
        return construct.make_zmod(expr[1], cap)
    if head == "field":
        return construct.make_field(expr[1], expr[2], cap)
    if head == "product":
        return construct.make_product(_build(expr[1], cap), _build(expr[2], cap), cap)
    if head == "matrix":
        return construct.make_matrix(_build(expr[2], cap), expr[1], cap)
    if head == "upper_triangular":
        return construct.make_upper_triangular(_build(expr[2], cap), expr[1], cap)
    if head == "skew_triangular":
        base = _build(expr[3], cap)
        sigma = build_morphism(base, expr[4])
        return construct.make_skew_triangular(base, expr[2], sigma, expr[1], order_cap=cap)
    if head == "quotient":
        from .ring import two_sided_ideal

        base = _build(expr[1], cap)
        ideal = two_sided_ideal(base, list(expr[2]))
        return construct.make_quotient(base, ideal, cap)
    raise StructuralError(f"unknown ring node {head!r}")


def build_morphism(ring: FiniteRing, expr: tuple | str) -> maps.RingMorphism:
    if isinstance(expr, str):
        expr = parse_morphism_spec(expr)
    head = expr[0]
    if head == "identity":
        return maps.identity_morphism(ring)
    if head == "frobenius":
        return maps.frobenius(ring)
    if head == "swap":
        return maps.product_swap(ring)
    if head == "entrywise":
        base = ring.structure.get("base")
        if base is None:
            raise StructuralError("entrywise morphism needs a triangular family ring")
        inner = build_morphism(base, expr[1])
        return maps.extend_to_triangular(inner, ring)
    if head == "table":
        return maps.require_endomorphism(ring, np.array(expr[1], dtype=np.int64))
    raise StructuralError(f"unknown morphism node {head!r}")


def build_derivation(ring: FiniteRing, alpha: maps.RingMorphism,
                     expr: tuple | str) -> maps.AlphaDerivation:
    if isinstance(expr, str):
        expr = parse_derivation_spec(expr)
    head = expr[0]
    if head == "zero":
        return maps.zero_derivation(ring, alpha)
    if head == "inner":
        return maps.inner_derivation(ring, alpha, expr[1])
    if head == "table":
        return maps.require_derivation(ring, alpha, np.array(expr[1], dtype=np.int64))
    raise StructuralError(f"unknown derivation node {head!r}")
