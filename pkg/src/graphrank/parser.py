"""Text form of the graph DSL.

Grammar (whitespace-insensitive):

    expr := 'ray'
          | 'comb' '(' INT ')'
          | 'star' '(' CARD ')' | 'tree' '(' CARD ')' | 'complete' '(' CARD ')'
          | 'with_tops' '(' expr ',' 'all' ',' ('whole_ray'|'every_2nd') ')'
          | 'union' '(' expr ',' expr ')'
          | 'copies' '(' CARD ',' expr ')'
          | 'join_vertex' '(' expr ',' LABEL ',' DESC ')'
          | 'add_edge' '(' expr ',' ADDR ',' ADDR ')'
          | 'hang_at_tops' '(' expr ',' expr ')'
          | 'finite' '{' 'v' ':' '[' LABEL,* ']' ',' 'e' ':' '[' LABEL-LABEL,* ']' '}'

    CARD := INT | 'aleph0' | 'aleph1'

Descriptors (DESC) and addresses (ADDR) use the forms documented in
``descriptors`` and ``addresses``.  Errors carry the source position.
"""

from __future__ import annotations

from .addresses import parse_address
from .cardinality import Cardinality
from .descriptors import parse_descriptor
from .expressions import (
    AddEdge, Comb, Complete, Copies, DisjointUnion, FiniteGraph, GraphExpr,
    HangAtTops, JoinVertex, Ray, Star, Tree, WithTops,
)


class ParseError(ValueError):
    def __init__(self, pos: int, message: str):
        super().__init__(f"parse error at {pos}: {message}")
        self.pos = pos


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str):
        if self.peek() != ch:
            raise ParseError(self.pos, f"expected {ch!r}")
        self.pos += 1

    def try_eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] in "_./"
        ):
            self.pos += 1
        if start == self.pos:
            raise ParseError(self.pos, "expected a word")
        return self.text[start:self.pos]

    def balanced_until(self, stops: str) -> str:
        """Raw text up to an unnested stop character (for sub-languages)."""
        self.skip_ws()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                if depth == 0 and ch in stops:
                    break
                depth -= 1
            elif depth == 0 and ch in stops:
                break
            self.pos += 1
        return self.text[start:self.pos].strip()

    def done(self):
        if self.peek():
            raise ParseError(self.pos, f"trailing input {self.peek()!r}")


def parse(text: str) -> GraphExpr:
    """Parse a DSL expression; raises ParseError with a position."""
    cur = _Cursor(text)
    e = _expr(cur)
    cur.done()
    return e


def _card(cur: _Cursor) -> Cardinality:
    pos = cur.pos
    try:
        return Cardinality.parse(cur.word())
    except ValueError as exc:
        raise ParseError(pos, str(exc)) from None


def _expr(cur: _Cursor) -> GraphExpr:
    pos = cur.pos
    head = cur.word()
    try:
        if head == "ray":
            return Ray()
        if head == "comb":
            cur.eat("(")
            n = int(cur.word())
            cur.eat(")")
            return Comb(n)
        if head in ("star", "tree", "complete"):
            cur.eat("(")
            k = _card(cur)
            cur.eat(")")
            return {"star": Star, "tree": Tree, "complete": Complete}[head](k)
        if head == "with_tops":
            cur.eat("(")
            base = _expr(cur)
            cur.eat(",")
            if cur.word() != "all":
                raise ParseError(cur.pos, "only the 'all' top family is supported")
            cur.eat(",")
            adj = cur.word()
            cur.eat(")")
            return WithTops(base, adj)
        if head == "union":
            cur.eat("(")
            left = _expr(cur)
            cur.eat(",")
            right = _expr(cur)
            cur.eat(")")
            return DisjointUnion(left, right)
        if head == "copies":
            cur.eat("(")
            k = _card(cur)
            cur.eat(",")
            base = _expr(cur)
            cur.eat(")")
            return Copies(k, base)
        if head == "join_vertex":
            cur.eat("(")
            base = _expr(cur)
            cur.eat(",")
            label = cur.word()
            cur.eat(",")
            desc_text = cur.balanced_until(")")
            cur.eat(")")
            return JoinVertex(base, label, parse_descriptor(desc_text))
        if head == "add_edge":
            cur.eat("(")
            base = _expr(cur)
            cur.eat(",")
            a = parse_address(cur.balanced_until(","))
            cur.eat(",")
            b = parse_address(cur.balanced_until(")"))
            cur.eat(")")
            return AddEdge(base, a, b)
        if head == "hang_at_tops":
            cur.eat("(")
            base = _expr(cur)
            cur.eat(",")
            child = _expr(cur)
            cur.eat(")")
            return HangAtTops(base, child)
        if head == "finite":
            return _finite(cur)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(pos, str(exc)) from None
    raise ParseError(pos, f"unknown constructor {head!r}")


def _finite(cur: _Cursor) -> FiniteGraph:
    cur.eat("{")
    if cur.word() != "v":
        raise ParseError(cur.pos, "expected 'v'")
    cur.eat(":")
    cur.eat("[")
    vertices = []
    while cur.peek() != "]":
        vertices.append(cur.word())
        if not cur.try_eat(","):
            break
    cur.eat("]")
    cur.eat(",")
    if cur.word() != "e":
        raise ParseError(cur.pos, "expected 'e'")
    cur.eat(":")
    cur.eat("[")
    edges = []
    while cur.peek() != "]":
        a = cur.word()
        cur.eat("-")
        b = cur.word()
        edges.append((a, b))
        if not cur.try_eat(","):
            break
    cur.eat("]")
    cur.eat("}")
    return FiniteGraph(tuple(vertices), tuple(edges))
